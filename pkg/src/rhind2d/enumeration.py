"""Trial tables: partitions of odd numbers into distinct divisors of the head.

For a prime ``D`` the head runs through ``D1 = (D+1)/2 + n`` and a trial is a
partition ``2n+1 = d2 + ... + dh`` (strictly decreasing parts) in which every
part divides ``D1``.  Parts are capped at ``D1/2`` so every tail multiplier
``D1/d`` is at least 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arithmetic import is_prime
from .tablecore import Decomposition, TrialRecord


@dataclass(frozen=True)
class PartitionTuple:
    parts: tuple[int, ...]

    @property
    def sum(self) -> int:
        return sum(self.parts)


def _require_odd_prime(D: int) -> None:
    if D < 3 or not is_prime(D):
        raise ValueError(f"D must be an odd prime, got {D}")


def _split_odd(odd_sum: int) -> int:
    if odd_sum % 2 == 0:
        raise ValueError(f"expected an odd sum, got {odd_sum}")
    return (odd_sum - 1) // 2


def two_term(D: int) -> Decomposition:
    """The unique ``2/D = 1/D1 + 1/D2`` for an odd prime ``D``."""
    _require_odd_prime(D)
    head = (D + 1) // 2
    return Decomposition.from_parts(D, head, (1,))


def doublets(odd_sum: int) -> list[PartitionTuple]:
    """All ``d2 > d3 >= 1`` with ``d2 + d3 == odd_sum``, largest ``d2`` first."""
    n = _split_odd(odd_sum)
    if n < 1:
        raise ValueError(f"odd_sum must be at least 3, got {odd_sum}")
    return [PartitionTuple((odd_sum - d3, d3)) for d3 in range(1, n + 1)]


def triplets(odd_sum: int) -> list[PartitionTuple]:
    """All ``d2 > d3 > d4 >= 1`` summing to ``odd_sum``.

    Ordered by ascending ``d4``, then ascending ``d3``.
    """
    n = _split_odd(odd_sum)
    if n < 3:
        raise ValueError(f"odd_sum must be at least 7, got {odd_sum}")
    out = []
    for d4 in range(1, odd_sum // 3 + 1):
        for d3 in range(d4 + 1, odd_sum):
            d2 = odd_sum - d3 - d4
            if d2 <= d3:
                break
            out.append(PartitionTuple((d2, d3, d4)))
    return out


def n_max3(D: int) -> int:
    """Largest ``n`` worth scanning for 3-term trials."""
    return (D - 3) // 2


def head_max4(D: int) -> int:
    """Largest head admitting a 4-term trial.

    Three distinct parts no larger than ``D1/2`` sum to at most
    ``D1/2 + D1/3 + D1/4 = 13 D1/12``, and ``2 D1 - D`` must reach that sum,
    so ``D1 <= 12 D / 11``.
    """
    return 12 * D // 11


def n_max4(D: int) -> int:
    return head_max4(D) - (D + 1) // 2


def _trials(D: int, n_range: range, partitions) -> list[TrialRecord]:
    out = []
    for n in n_range:
        head = (D + 1) // 2 + n
        for p in partitions(2 * n + 1):
            if 2 * p.parts[0] <= head and all(head % d == 0 for d in p.parts):
                out.append(TrialRecord.build(D, n, p.parts))
    return out


def trials3(D: int, n_limit: int | None = None) -> list[TrialRecord]:
    """3-term trials for ``D``, ordered by ``n`` then doublet order.

    ``n_limit`` overrides the scan bound; used to check that the default
    bound loses nothing.
    """
    _require_odd_prime(D)
    top = n_max3(D) if n_limit is None else n_limit
    return _trials(D, range(1, top + 1), doublets)


def trials4(D: int, n_limit: int | None = None) -> list[TrialRecord]:
    """4-term trials for ``D``, ordered by ``n`` then triplet order."""
    _require_odd_prime(D)
    top = n_max4(D) if n_limit is None else n_limit
    return _trials(D, range(3, top + 1), triplets)
