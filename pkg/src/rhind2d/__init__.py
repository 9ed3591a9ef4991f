"""Reconstruction of the Rhind papyrus 2/D table for prime D from 3 to 97."""

from .arithmetic import Rational, divisors, is_prime, sum_of_unit_fractions, unit_denominator
from .enumeration import doublets, n_max3, n_max4, trials3, trials4, triplets, two_term
from .generalsearch import GeneralSolution, general_search, unrestricted_search
from .selection import (
    DEFAULT_FLAGS,
    AmbiguityError,
    NoAdmissibleOutcome,
    SelectionError,
    TopFlags,
    apply_topflag,
    reconstruct,
    reconstruct_table,
    select3,
    select4,
    transition_decide,
)
from .tablecore import (
    Appreciation,
    Decomposition,
    Rule,
    SelectionOutcome,
    TransitionAnalysis,
    TrialRecord,
    ground_truth,
    validate,
)

__all__ = [
    "DEFAULT_FLAGS",
    "AmbiguityError",
    "Appreciation",
    "Decomposition",
    "GeneralSolution",
    "NoAdmissibleOutcome",
    "Rational",
    "Rule",
    "SelectionError",
    "SelectionOutcome",
    "TopFlags",
    "TransitionAnalysis",
    "TrialRecord",
    "apply_topflag",
    "divisors",
    "doublets",
    "general_search",
    "ground_truth",
    "is_prime",
    "n_max3",
    "n_max4",
    "reconstruct",
    "reconstruct_table",
    "select3",
    "select4",
    "sum_of_unit_fractions",
    "transition_decide",
    "trials3",
    "trials4",
    "triplets",
    "two_term",
    "unit_denominator",
    "unrestricted_search",
    "validate",
]
