"""Searches beyond the divisor method.

``general_search`` drops the requirement that multipliers come from divisors
of the head; ``unrestricted_search`` drops multipliers altogether and is a
plain brute force, kept as an oracle for tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .arithmetic import is_prime, unit_denominator
from .tablecore import Decomposition


@dataclass(frozen=True)
class GeneralSolution:
    D: int
    head: int
    multipliers: tuple[int, ...]

    @property
    def denominators(self) -> tuple[int, ...]:
        return (self.head, *(m * self.D for m in self.multipliers))

    @property
    def divisor_compatible(self) -> bool:
        """True when every multiplier divides the head (the papyrus method)."""
        return all(self.head % m == 0 for m in self.multipliers)

    def to_decomposition(self) -> Decomposition:
        return Decomposition.from_multipliers(self.D, self.head, self.multipliers)


def general_search(D: int, h: int, flag: int) -> list[GeneralSolution]:
    """All ``2/D = 1/D1 + sum(1/(m_i D))`` with ``2 <= m_2 < ... < m_h <= flag``.

    Multiplier tuples are enumerated in lexicographic order and the head is
    solved from what is left of ``2/D``.
    """
    if h not in (2, 3, 4):
        raise ValueError(f"h must be 2, 3 or 4, got {h}")
    if D < 3 or not is_prime(D):
        raise ValueError(f"D must be an odd prime, got {D}")
    if flag < 2:
        raise ValueError(f"flag must be >= 2, got {flag}")
    target = Fraction(2, D)
    out = []
    for mults in combinations(range(2, flag + 1), h - 1):
        rest = target - sum(Fraction(1, m * D) for m in mults)
        head = unit_denominator(rest)
        if head is not None and head < mults[0] * D:
            out.append(GeneralSolution(D, head, mults))
    return out


def unrestricted_search(D: int, h: int, max_denominator: int) -> list[tuple[int, ...]]:
    """Every increasing tuple ``a < b (< c) <= max_denominator`` with unit fractions summing to ``2/D``.

    Only ``h`` in (2, 3) is supported; the last denominator is solved exactly
    instead of scanned; the middle one is confined to the only range that can
    close the sum.
    """
    if h not in (2, 3):
        raise ValueError(f"unrestricted search supports h = 2 or 3, got {h}")
    if max_denominator < D:
        raise ValueError("max_denominator must be at least D")
    target = Fraction(2, D)
    out: list[tuple[int, ...]] = []

    def close(prefix: tuple[int, ...], rest: Fraction) -> None:
        last = unit_denominator(rest)
        if last is not None and last > prefix[-1] and last <= max_denominator:
            out.append((*prefix, last))

    # 1/a < 2/D, so a starts just above D/2
    for a in range(D // 2 + 1, max_denominator + 1):
        rest_a = target - Fraction(1, a)
        # the remaining h-1 terms are each smaller than 1/a; monotone in a
        if rest_a >= Fraction(h - 1, a):
            break
        if h == 2:
            close((a,), rest_a)
            continue
        # 1/b < rest_a < 2/b
        lo = max(a + 1, math.floor(1 / rest_a) + 1)
        hi = min(max_denominator, math.ceil(2 / rest_a) - 1)
        for b in range(lo, hi + 1):
            close((a, b), rest_a - Fraction(1, b))
    return out
