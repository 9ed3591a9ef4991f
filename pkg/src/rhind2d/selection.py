"""Top-flag cutoffs and the decision cascades that pick one row per prime.

3-term cascade: smallest delta, then ``2n <= 10``, then consecutive multipliers.
4-term cascade: full consecutive multiplier run, then smallest delta, with odd
heads vetoed when the cascade would otherwise land on one.

Primes whose best 3-term row has its last multiplier just above the flag
(``tf3 < m3 <= borderline_m3_max``) go through the 3 -> 4 transition analysis.

The rule order is one consistent reading of the historical choices, not a
claim about how the scribes actually reasoned.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

from .arithmetic import is_prime
from .enumeration import trials3, trials4, two_term
from .tablecore import (
    Appreciation,
    Rule,
    SelectionOutcome,
    TransitionAnalysis,
    TrialRecord,
    validate,
)

MOTHER_TABLE = (3, 5, 7, 11)
DOMAIN = range(3, 98)
GAP_TOO_HIGH = 13
TWO_N_LIMIT = 10


class SelectionError(Exception):
    """The cascade could not produce an outcome for ``D``."""

    def __init__(self, D: int, message: str):
        super().__init__(f"2/{D}: {message}")
        self.D = D


class AmbiguityError(SelectionError):
    """Several candidates survive every rule."""

    def __init__(self, D: int, candidates: Sequence[TrialRecord]):
        keys = ", ".join(f"n={c.n} parts={c.parts}" for c in candidates)
        super().__init__(D, f"cascade cannot decide between {keys}")
        self.candidates = tuple(candidates)


class NoAdmissibleOutcome(SelectionError):
    """No candidate satisfies the flags in force."""


@dataclass(frozen=True)
class TopFlags:
    tf3: int = 10
    tf4: int = 10
    tf3_relaxed: int = 15
    borderline_m3_max: int = 16

    def __post_init__(self) -> None:
        if min(self.tf3, self.tf4, self.tf3_relaxed, self.borderline_m3_max) < 2:
            raise ValueError("all flags must be >= 2")
        if self.tf3 > self.tf3_relaxed:
            raise ValueError("tf3 must not exceed tf3_relaxed")


DEFAULT_FLAGS = TopFlags()


def apply_topflag(trials: Sequence[TrialRecord], flag: int) -> list[TrialRecord]:
    """Keep the trials whose last multiplier is at most ``flag``.

    Same as ``D_h <= D * flag`` and as ``D1 <= d_h * flag``.
    """
    if flag < 2:
        raise ValueError(f"flag must be >= 2, got {flag}")
    return [t for t in trials if t.max_multiplier <= flag]


Step = tuple[Rule, Callable[[list[TrialRecord]], list[TrialRecord]]]


def _min_delta(cands: list[TrialRecord]) -> list[TrialRecord]:
    low = min(c.delta for c in cands)
    return [c for c in cands if c.delta == low]


def _two_n_le_10(cands: list[TrialRecord]) -> list[TrialRecord]:
    return [c for c in cands if 2 * c.n <= TWO_N_LIMIT]


def _consecutive(cands: list[TrialRecord]) -> list[TrialRecord]:
    return [c for c in cands if c.decomposition.shows_consecutive_run()]


def _run(D: int, cands: Sequence[TrialRecord], steps: Sequence[Step]) -> tuple[TrialRecord, list[Rule]]:
    pool = list(cands)
    if len(pool) == 1:
        return pool[0], [Rule.SINGLE_CANDIDATE]
    tags: list[Rule] = []
    for rule, narrow in steps:
        kept = narrow(pool)
        if not kept:
            # a rule nobody satisfies cannot discriminate
            continue
        tags.append(rule)
        pool = kept
        if len(pool) == 1:
            return pool[0], tags
    raise AmbiguityError(D, pool)


_STEPS3: tuple[Step, ...] = (
    (Rule.SMALLEST_DELTA, _min_delta),
    (Rule.FILTER_TWO_N_LE_10, _two_n_le_10),
    (Rule.CONSECUTIVE_MULTIPLIERS, _consecutive),
)

_STEPS4: tuple[Step, ...] = (
    (Rule.CONSECUTIVE_MULTIPLIERS, _consecutive),
    (Rule.SMALLEST_DELTA, _min_delta),
)


def cascade3(candidates: Sequence[TrialRecord]) -> tuple[TrialRecord, list[Rule]]:
    """Pick one 3-term trial among already flag-filtered ``candidates``."""
    if not candidates:
        raise ValueError("no candidates")
    return _run(candidates[0].D, candidates, _STEPS3)


def cascade4(candidates: Sequence[TrialRecord]) -> tuple[TrialRecord, list[Rule]]:
    """Pick one 4-term trial; an odd head winner is vetoed and the cascade rerun on even heads."""
    if not candidates:
        raise ValueError("no candidates")
    D = candidates[0].D
    winner, tags = _run(D, candidates, _STEPS4)
    if winner.head % 2 == 0:
        return winner, tags
    even = [c for c in candidates if c.head % 2 == 0]
    if not even:
        raise NoAdmissibleOutcome(D, "every 4-term candidate has an odd head")
    winner, tags = _run(D, even, _STEPS4)
    return winner, [Rule.ODD_HEAD_DISCARDED, *tags]


def select3(D: int, flags: TopFlags = DEFAULT_FLAGS) -> SelectionOutcome | None:
    """3-term outcome at ``flags.tf3``, or None when no trial survives the flag."""
    cands = apply_topflag(trials3(D), flags.tf3)
    if not cands:
        return None
    winner, tags = cascade3(cands)
    return SelectionOutcome(D, winner.decomposition, flags.tf3, tuple(tags))


def select4(D: int, flags: TopFlags = DEFAULT_FLAGS) -> SelectionOutcome | None:
    """4-term outcome at ``flags.tf4``, or None when no trial survives the flag."""
    cands = apply_topflag(trials4(D), flags.tf4)
    if not cands:
        return None
    winner, tags = cascade4(cands)
    return SelectionOutcome(D, winner.decomposition, flags.tf4, tuple(tags))


def best_m3(D: int) -> int | None:
    """Smallest last multiplier over all 3-term trials of ``D``."""
    rows = trials3(D)
    return min((r.max_multiplier for r in rows), default=None)


def is_borderline(D: int, flags: TopFlags = DEFAULT_FLAGS) -> bool:
    if D < 13:
        return False
    m3 = best_m3(D)
    return m3 is not None and flags.tf3 < m3 <= flags.borderline_m3_max


def _borderline_three(D: int, flags: TopFlags) -> tuple[TrialRecord | None, list[Rule], list[Rule]]:
    """Return the 3-term candidate, the GapTooHigh tag if it fired, and its cascade tags."""
    rows = [r for r in trials3(D) if r.max_multiplier <= flags.borderline_m3_max]
    gap_tags: list[Rule] = []
    narrow = [r for r in rows if r.delta < GAP_TOO_HIGH]
    if len(narrow) < len(rows):
        gap_tags.append(Rule.GAP_TOO_HIGH)
    if not narrow:
        return None, gap_tags, []
    if len(narrow) == 1:
        return narrow[0], gap_tags, [Rule.SINGLE_CANDIDATE]
    best = _min_delta(narrow)
    if len(best) > 1:
        raise AmbiguityError(D, best)
    return best[0], gap_tags, [Rule.SMALLEST_DELTA]


def transition_decide(D: int, flags: TopFlags = DEFAULT_FLAGS) -> tuple[TransitionAnalysis, SelectionOutcome]:
    """Decide between keeping 3 terms, moving to 4, or falling back to 2."""
    if not is_borderline(D, flags):
        raise ValueError(f"2/{D} is not a borderline prime under {flags}")
    three, gap_tags, three_tags = _borderline_three(D, flags)
    four = select4(D, flags)

    def keep_three(verdict: list[Rule], analysis: TransitionAnalysis) -> SelectionOutcome:
        if three is None or three.max_multiplier > flags.tf3_relaxed:
            raise NoAdmissibleOutcome(
                D, f"3-term candidate exceeds the relaxed flag {flags.tf3_relaxed} and no 4-term option is kept"
            )
        tags = (*gap_tags, *three_tags, *verdict, Rule.FLAG_RELAXED_15)
        return SelectionOutcome(D, three.decomposition, flags.tf3_relaxed, tags, analysis)

    if four is None:
        analysis = TransitionAnalysis(D, None, None, None, Appreciation.NOT_APPLICABLE)
        return analysis, keep_three([], analysis)
    if three is None:
        analysis = TransitionAnalysis(D, None, None, None, Appreciation.NOT_APPLICABLE)
        tags = (*gap_tags, *four.rationale, Rule.TRANSITION_IMPROVEMENT)
        return analysis, SelectionOutcome(D, four.chosen, flags.tf4, tags, analysis)

    analysis = TransitionAnalysis.compare(three.decomposition, four.chosen)

    def adopt_four(verdict: Rule) -> SelectionOutcome:
        tags = (*gap_tags, *four.rationale, verdict)
        return SelectionOutcome(D, four.chosen, flags.tf4, tags, analysis)

    if four.chosen.shows_consecutive_run() or analysis.appreciation is Appreciation.NOT_APPLICABLE:
        return analysis, adopt_four(Rule.TRANSITION_IMPROVEMENT)
    if analysis.appreciation is Appreciation.NO_INTEREST:
        tags = (*gap_tags, Rule.TRANSITION_NO_INTEREST, Rule.FALLBACK_2_TERMS)
        return analysis, SelectionOutcome(D, two_term(D), None, tags, analysis)
    if analysis.appreciation is Appreciation.TOO_NEAR:
        return analysis, keep_three([Rule.TRANSITION_TOO_NEAR], analysis)
    return analysis, adopt_four(Rule.TRANSITION_ACCEPTABLE)


def _check_domain(D: int) -> None:
    if D not in DOMAIN or not is_prime(D):
        raise ValueError(f"D must be a prime between 3 and 97, got {D}")


def reconstruct(D: int, flags: TopFlags = DEFAULT_FLAGS) -> SelectionOutcome:
    """Papyrus-style decomposition of ``2/D`` for a prime ``3 <= D <= 97``."""
    _check_domain(D)
    if D in MOTHER_TABLE:
        outcome = SelectionOutcome(D, two_term(D), None, (Rule.MOTHER_TABLE,))
    elif is_borderline(D, flags):
        outcome = transition_decide(D, flags)[1]
    else:
        outcome = select3(D, flags) or select4(D, flags)
        if outcome is None:
            raise NoAdmissibleOutcome(D, "no 3-term or 4-term trial survives the flags")
    check = validate(outcome.chosen)
    if not check:
        raise AssertionError(f"2/{D}: selected decomposition is invalid: {check.violations}")
    return outcome


def reconstruct_table(flags: TopFlags = DEFAULT_FLAGS) -> dict[int, SelectionOutcome]:
    """Outcomes for every prime from 3 to 97, keyed by D in ascending order."""
    return {D: reconstruct(D, flags) for D in DOMAIN if is_prime(D)}
