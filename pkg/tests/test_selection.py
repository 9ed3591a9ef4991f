import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rhind2d.arithmetic import is_prime
from rhind2d.enumeration import trials3, trials4
from rhind2d.selection import (
    DEFAULT_FLAGS,
    AmbiguityError,
    NoAdmissibleOutcome,
    SelectionError,
    TopFlags,
    apply_topflag,
    best_m3,
    cascade3,
    cascade4,
    is_borderline,
    reconstruct,
    reconstruct_table,
    select3,
    select4,
    transition_decide,
)
from rhind2d.tablecore import Appreciation, Rule, TrialRecord, ground_truth

R = Rule

EXPECTED_TRACES = {
    3: [R.MOTHER_TABLE],
    5: [R.MOTHER_TABLE],
    7: [R.MOTHER_TABLE],
    11: [R.MOTHER_TABLE],
    13: [R.SMALLEST_DELTA],
    17: [R.SMALLEST_DELTA, R.FILTER_TWO_N_LE_10, R.CONSECUTIVE_MULTIPLIERS],
    19: [R.SMALLEST_DELTA],
    23: [R.TRANSITION_NO_INTEREST, R.FALLBACK_2_TERMS],
    29: [R.SMALLEST_DELTA, R.TRANSITION_ACCEPTABLE],
    31: [R.SMALLEST_DELTA, R.FILTER_TWO_N_LE_10, R.CONSECUTIVE_MULTIPLIERS],
    37: [R.SINGLE_CANDIDATE],
    41: [R.SINGLE_CANDIDATE],
    43: [R.GAP_TOO_HIGH, R.SINGLE_CANDIDATE, R.TRANSITION_IMPROVEMENT],
    47: [R.SINGLE_CANDIDATE],
    53: [R.SINGLE_CANDIDATE, R.TRANSITION_TOO_NEAR, R.FLAG_RELAXED_15],
    59: [R.SINGLE_CANDIDATE],
    61: [R.SMALLEST_DELTA],
    67: [R.SINGLE_CANDIDATE],
    71: [R.SMALLEST_DELTA, R.FILTER_TWO_N_LE_10],
    73: [R.SINGLE_CANDIDATE, R.TRANSITION_IMPROVEMENT],
    79: [R.SINGLE_CANDIDATE],
    83: [R.CONSECUTIVE_MULTIPLIERS],
    89: [R.ODD_HEAD_DISCARDED, R.SINGLE_CANDIDATE, R.TRANSITION_IMPROVEMENT],
    97: [R.SINGLE_CANDIDATE],
}


def test_apply_topflag_examples():
    assert apply_topflag(trials3(53), 10) == []
    (row,) = apply_topflag(trials3(53), 15)
    assert (row.parts, row.head) == ((5, 2), 30)
    (row,) = apply_topflag(trials3(97), 10)
    assert (row.parts, row.head) == ((8, 7), 56)


def test_apply_topflag_preserves_order():
    rows = trials4(89)
    kept = apply_topflag(rows, 10)
    assert kept == [r for r in rows if r in kept]
    with pytest.raises(ValueError):
        apply_topflag(rows, 1)


@pytest.mark.parametrize(
    "D, dens, trace",
    [
        (41, (24, 246, 328), [R.SINGLE_CANDIDATE]),
        (13, (8, 52, 104), [R.SMALLEST_DELTA]),
        (71, (40, 568, 710), [R.SMALLEST_DELTA, R.FILTER_TWO_N_LE_10]),
        (17, (12, 51, 68), [R.SMALLEST_DELTA, R.FILTER_TWO_N_LE_10, R.CONSECUTIVE_MULTIPLIERS]),
    ],
)
def test_select3_examples(D, dens, trace):
    out = select3(D)
    assert out.chosen.denominators == dens
    assert list(out.rationale) == trace
    assert out.topflag_used == 10


@pytest.mark.parametrize(
    "D, dens, trace",
    [
        (83, (60, 332, 415, 498), [R.CONSECUTIVE_MULTIPLIERS]),
        (61, (40, 244, 488, 610), [R.SMALLEST_DELTA]),
        (89, (60, 356, 534, 890), [R.ODD_HEAD_DISCARDED, R.SINGLE_CANDIDATE]),
    ],
)
def test_select4_examples(D, dens, trace):
    out = select4(D)
    assert out.chosen.denominators == dens
    assert list(out.rationale) == trace


def test_select3_no_survivor():
    assert select3(53) is None
    assert select3(61) is None


def test_ambiguity_is_raised_not_broken():
    # two rows equal on every criterion: same delta, both 2n <= 10, neither consecutive
    a = TrialRecord.build(13, 1, (2, 1))
    b = TrialRecord.build(13, 1, (2, 1))
    with pytest.raises(AmbiguityError) as err:
        cascade3([a, b])
    assert err.value.D == 13
    with pytest.raises(ValueError):
        cascade3([])
    with pytest.raises(ValueError):
        cascade4([])


def test_borderline_set():
    assert [D for D in range(13, 98) if is_prime(D) and is_borderline(D)] == [23, 29, 43, 53, 73, 89]
    assert best_m3(89) == 16


@pytest.mark.parametrize(
    "D, shared, ranks, appreciation, final",
    [
        (23, 46, (2, 2), Appreciation.NO_INTEREST, (12, 276)),
        (53, 318, (2, 3), Appreciation.TOO_NEAR, (30, 318, 795)),
        (29, 232, (2, 4), Appreciation.ACCEPTABLE, (24, 58, 174, 232)),
        (73, 292, (2, 3), Appreciation.TOO_NEAR, (60, 219, 292, 365)),
    ],
)
def test_transition_examples(D, shared, ranks, appreciation, final):
    analysis, out = transition_decide(D)
    assert analysis.shared_denominator == shared
    assert (analysis.rank3, analysis.rank4) == ranks
    assert analysis.appreciation is appreciation
    assert out.chosen.denominators == final


def test_transition_53_uses_relaxed_flag():
    _, out = transition_decide(53)
    assert out.topflag_used == 15
    assert out.chosen.max_multiplier == 15


def test_transition_43_drops_wide_gap():
    analysis, out = transition_decide(43)
    assert analysis.appreciation is Appreciation.NOT_APPLICABLE
    assert out.rationale[0] is R.GAP_TOO_HIGH
    assert out.chosen.denominators == (42, 86, 129, 301)


def test_transition_rejects_non_borderline():
    with pytest.raises(ValueError):
        transition_decide(13)


@pytest.mark.parametrize("D", sorted(EXPECTED_TRACES))
def test_reconstruct_matches_papyrus(D):
    out = reconstruct(D)
    assert out.chosen.denominators == ground_truth()[D].denominators
    assert out.chosen.multipliers == ground_truth()[D].multipliers
    assert list(out.rationale) == EXPECTED_TRACES[D]
    assert out.chosen.total() == Fraction(2, D)


def test_top_flag_respected():
    for D, out in reconstruct_table().items():
        if out.term_count == 2:
            assert out.topflag_used is None
        elif D == 53:
            assert out.chosen.max_multiplier <= 15
        else:
            assert out.chosen.max_multiplier <= 10


@pytest.mark.parametrize("D", [1, 2, 9, 99, 101])
def test_reconstruct_domain(D):
    with pytest.raises(ValueError):
        reconstruct(D)


def test_lowered_tf3_diverges():
    table = reconstruct_table(TopFlags(tf3=8))
    diff = {D for D, out in table.items() if out.chosen.denominators != ground_truth()[D].denominators}
    assert diff == {47, 71}


def test_lowered_relaxed_flag_fails_53():
    with pytest.raises(NoAdmissibleOutcome) as err:
        reconstruct(53, TopFlags(tf3_relaxed=14))
    assert err.value.D == 53
    assert isinstance(err.value, SelectionError)


@pytest.mark.parametrize("kwargs", [{"tf3": 1}, {"tf4": 0}, {"tf3": 16, "tf3_relaxed": 15}])
def test_flag_validation(kwargs):
    with pytest.raises(ValueError):
        TopFlags(**kwargs)


def test_rationale_replays():
    assert reconstruct_table() == reconstruct_table(DEFAULT_FLAGS)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([13, 17, 19, 31, 37, 41, 47, 59, 67, 71, 97]), st.randoms())
def test_cascade3_ignores_input_order(D, rnd):
    cands = apply_topflag(trials3(D), 10)
    shuffled = cands[:]
    rnd.shuffle(shuffled)
    assert cascade3(shuffled) == cascade3(cands)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([29, 43, 61, 73, 79, 83, 89]), st.randoms())
def test_cascade4_ignores_input_order(D, rnd):
    cands = apply_topflag(trials4(D), 10)
    shuffled = cands[:]
    rnd.shuffle(shuffled)
    assert cascade4(shuffled) == cascade4(cands)


def test_reconstruct_is_order_independent():
    order = list(ground_truth())
    random.Random(7).shuffle(order)
    assert {D: reconstruct(D) for D in order} == reconstruct_table()
