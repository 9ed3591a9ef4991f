"""Domain model: decompositions, trial rows, selection outcomes, ground truth."""

from __future__ import annotations

import enum
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .arithmetic import Rational, is_prime, sum_of_unit_fractions


class Rule(str, enum.Enum):
    """Tags recorded in a selection rationale, in the order they fired."""

    MOTHER_TABLE = "MotherTable"
    TWO_TERM_UNIQUE = "TwoTermUnique"
    SINGLE_CANDIDATE = "SingleCandidate"
    SMALLEST_DELTA = "SmallestDelta"
    FILTER_TWO_N_LE_10 = "FilterTwoNLe10"
    CONSECUTIVE_MULTIPLIERS = "ConsecutiveMultipliers"
    ODD_HEAD_DISCARDED = "OddHeadDiscarded"
    GAP_TOO_HIGH = "GapTooHigh"
    TRANSITION_NO_INTEREST = "TransitionNoInterest"
    TRANSITION_TOO_NEAR = "TransitionTooNear"
    TRANSITION_ACCEPTABLE = "TransitionAcceptable"
    TRANSITION_IMPROVEMENT = "TransitionImprovement"
    FLAG_RELAXED_15 = "FlagRelaxed15"
    FALLBACK_2_TERMS = "Fallback2Terms"

    def __str__(self) -> str:
        return self.value


class Appreciation(str, enum.Enum):
    NO_INTEREST = "NoInterest"
    TOO_NEAR = "TooNear"
    ACCEPTABLE = "Acceptable"
    NOT_APPLICABLE = "NotApplicable"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_rank_gap(cls, gap: int) -> Appreciation:
        """Classify ``rank4 - rank3``; a non-positive gap counts as no interest."""
        if gap <= 0:
            return cls.NO_INTEREST
        if gap == 1:
            return cls.TOO_NEAR
        return cls.ACCEPTABLE


@dataclass(frozen=True)
class Decomposition:
    """``2/D = 1/D1 + sum(1/(m_i D))`` with ``d_i = D1/m_i``.

    ``denominators`` is ascending (head first), ``multipliers`` holds the tail
    multipliers ``D_i/D`` ascending, and ``parts`` the divisor parts of the
    head in descending order.  Instances built through the constructors below
    are always consistent; ``validate`` checks arbitrary ones.
    """

    D: int
    denominators: tuple[int, ...]
    multipliers: tuple[int, ...]
    parts: tuple[int, ...] = ()

    @classmethod
    def from_parts(cls, D: int, head: int, parts: Sequence[int]) -> Decomposition:
        """Build from the head ``D1`` and its divisor parts (descending)."""
        parts = tuple(parts)
        # smallest part gives the largest denominator; compute it first
        tail = [D * head // d for d in reversed(parts)][::-1]
        return cls(
            D=D,
            denominators=(head, *tail),
            multipliers=tuple(head // d for d in parts),
            parts=parts,
        )

    @classmethod
    def from_multipliers(cls, D: int, head: int, multipliers: Sequence[int]) -> Decomposition:
        mults = tuple(multipliers)
        parts = tuple(head // m for m in mults) if all(head % m == 0 for m in mults) else ()
        return cls(D=D, denominators=(head, *(m * D for m in mults)), multipliers=mults, parts=parts)

    @classmethod
    def from_denominators(cls, D: int, denominators: Sequence[int]) -> Decomposition:
        """Derive multipliers and parts from a denominator list.

        Tail denominators not divisible by ``D`` get multiplier 0, which
        ``validate`` reports.
        """
        dens = tuple(denominators)
        head, tail = dens[0], dens[1:]
        mults = tuple(d // D if d % D == 0 else 0 for d in tail)
        parts = ()
        if all(m > 0 and head % m == 0 for m in mults):
            parts = tuple(head // m for m in mults)
        return cls(D=D, denominators=dens, multipliers=mults, parts=parts)

    @property
    def head(self) -> int:
        return self.denominators[0]

    @property
    def term_count(self) -> int:
        return len(self.denominators)

    @property
    def max_multiplier(self) -> int:
        return self.multipliers[-1]

    def total(self) -> Rational:
        return sum_of_unit_fractions(self.denominators)

    def shows_consecutive_run(self) -> bool:
        """True when the tail multipliers are consecutive integers (2 or more of them)."""
        m = self.multipliers
        return len(m) >= 2 and all(b == a + 1 for a, b in zip(m, m[1:]))

    def __str__(self) -> str:
        return f"2/{self.D} = " + " + ".join(f"1/{d}" for d in self.denominators)


@dataclass(frozen=True)
class Validation:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(dec: Decomposition) -> Validation:
    """Check every Decomposition invariant; the result is falsy on failure.

    Violation codes are stable strings, e.g. ``"sum"`` or ``"multiplier[1]"``.
    """
    bad: list[str] = []
    dens, mults, parts = dec.denominators, dec.multipliers, dec.parts
    if len(dens) < 2:
        bad.append("term_count")
    if any(d < 1 for d in dens):
        bad.append("nonpositive_denominator")
        return Validation(tuple(bad))
    if sum_of_unit_fractions(dens) != Fraction(2, dec.D):
        bad.append("sum")
    if any(b <= a for a, b in zip(dens, dens[1:])):
        bad.append("denominators_order")
    if len(mults) != len(dens) - 1:
        bad.append("multiplier_count")
    else:
        for i, (m, d) in enumerate(zip(mults, dens[1:])):
            if m < 2 or m * dec.D != d:
                bad.append(f"multiplier[{i}]")
        if any(b <= a for a, b in zip(mults, mults[1:])):
            bad.append("multipliers_order")
    if parts:
        if len(parts) != len(dens) - 1:
            bad.append("part_count")
        else:
            for i, (p, d) in enumerate(zip(parts, dens[1:])):
                if p < 1 or dec.head % p != 0 or dec.D * dec.head != d * p:
                    bad.append(f"part[{i}]")
            if any(b >= a for a, b in zip(parts, parts[1:])):
                bad.append("parts_order")
    return Validation(tuple(bad))


@dataclass(frozen=True)
class TrialRecord:
    """One row of a trial table: ``2n+1 = d2 + ... + dh`` with every part dividing ``D1``."""

    D: int
    n: int
    parts: tuple[int, ...]
    head: int
    decomposition: Decomposition

    @classmethod
    def build(cls, D: int, n: int, parts: Sequence[int]) -> TrialRecord:
        head = (D + 1) // 2 + n
        parts = tuple(parts)
        return cls(D=D, n=n, parts=parts, head=head, decomposition=Decomposition.from_parts(D, head, parts))

    @property
    def odd_sum(self) -> int:
        return 2 * self.n + 1

    @property
    def delta(self) -> int:
        """Closeness of the two smallest parts."""
        return self.parts[-2] - self.parts[-1]

    @property
    def r_param(self) -> Rational:
        return Fraction(2 * self.head - self.D, self.head)

    @property
    def multipliers(self) -> tuple[int, ...]:
        return self.decomposition.multipliers

    @property
    def max_multiplier(self) -> int:
        return self.decomposition.max_multiplier

    @property
    def key(self) -> tuple[int, int, tuple[int, ...]]:
        return (self.D, self.n, self.parts)


@dataclass(frozen=True)
class TransitionAnalysis:
    """Comparison of a borderline 3-term candidate with the best 4-term one."""

    D: int
    shared_denominator: int | None
    rank3: int | None
    rank4: int | None
    appreciation: Appreciation

    @classmethod
    def compare(cls, three: Decomposition, four: Decomposition) -> TransitionAnalysis:
        shared = sorted(set(three.denominators) & set(four.denominators))
        if not shared:
            return cls(three.D, None, None, None, Appreciation.NOT_APPLICABLE)
        # only one shared denominator occurs in the table; take the smallest if several
        s = shared[0]
        r3 = three.denominators.index(s) + 1
        r4 = four.denominators.index(s) + 1
        return cls(three.D, s, r3, r4, Appreciation.from_rank_gap(r4 - r3))


@dataclass(frozen=True)
class SelectionOutcome:
    D: int
    chosen: Decomposition
    topflag_used: int | None
    rationale: tuple[Rule, ...]
    transition: TransitionAnalysis | None = None

    @property
    def term_count(self) -> int:
        return self.chosen.term_count


# Papyrus entries: prime D -> (denominators, multipliers as printed in red).
_TABLE_1: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {
    3: ((2, 6), (2,)),
    5: ((3, 15), (3,)),
    7: ((4, 28), (4,)),
    11: ((6, 66), (6,)),
    23: ((12, 276), (12,)),
    13: ((8, 52, 104), (4, 8)),
    17: ((12, 51, 68), (3, 4)),
    19: ((12, 76, 114), (4, 6)),
    31: ((20, 124, 155), (4, 5)),
    37: ((24, 111, 296), (3, 8)),
    41: ((24, 246, 328), (6, 8)),
    47: ((30, 141, 470), (3, 10)),
    53: ((30, 318, 795), (6, 15)),
    59: ((36, 236, 531), (4, 9)),
    67: ((40, 335, 536), (5, 8)),
    71: ((40, 568, 710), (8, 10)),
    97: ((56, 679, 776), (7, 8)),
    29: ((24, 58, 174, 232), (2, 6, 8)),
    43: ((42, 86, 129, 301), (2, 3, 7)),
    61: ((40, 244, 488, 610), (4, 8, 10)),
    73: ((60, 219, 292, 365), (3, 4, 5)),
    79: ((60, 237, 316, 790), (3, 4, 10)),
    83: ((60, 332, 415, 498), (4, 5, 6)),
    89: ((60, 356, 534, 890), (4, 6, 10)),
}


@dataclass(frozen=True)
class GroundTruthTable(Mapping[int, Decomposition]):
    """Papyrus entries for prime D from 3 to 97, keyed by D."""

    entries: Mapping[int, Decomposition] = field(default_factory=dict)

    def __getitem__(self, D: int) -> Decomposition:
        return self.entries[D]

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def by_term_count(self, h: int) -> dict[int, Decomposition]:
        return {D: dec for D, dec in self.items() if dec.term_count == h}


_GROUND_TRUTH: GroundTruthTable | None = None


def ground_truth() -> GroundTruthTable:
    """Return the embedded papyrus table; raises if any entry fails validation."""
    global _GROUND_TRUTH
    if _GROUND_TRUTH is None:
        entries: dict[int, Decomposition] = {}
        for D, (dens, mults) in sorted(_TABLE_1.items()):
            head = dens[0]
            parts = tuple(head // m for m in mults) if all(head % m == 0 for m in mults) else ()
            dec = Decomposition(D=D, denominators=dens, multipliers=mults, parts=parts)
            check = validate(dec)
            if not check or not is_prime(D):
                raise RuntimeError(f"embedded entry 2/{D} is invalid: {check.violations}")
            entries[D] = dec
        _GROUND_TRUTH = GroundTruthTable(entries)
    return _GROUND_TRUTH
