"""Exact integer and rational helpers.

Everything here works on Python ints and :class:`fractions.Fraction`, so
no result ever goes through floating point.
"""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
from math import isqrt

# Fraction normalises on construction (gcd(num, den) == 1, den > 0).
Rational = Fraction


def divisors(n: int) -> list[int]:
    """Return the positive divisors of ``n`` in ascending order."""
    if n < 1:
        raise ValueError(f"divisors() requires n >= 1, got {n}")
    small: list[int] = []
    large: list[int] = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def sum_of_unit_fractions(denominators: Iterable[int]) -> Rational:
    """Exact sum of ``1/d`` over ``denominators``.

    >>> sum_of_unit_fractions([2, 6])
    Fraction(2, 3)
    """
    dens = list(denominators)
    if not dens:
        raise ValueError("need at least one denominator")
    total = Fraction(0)
    for d in dens:
        if d < 1:
            raise ValueError(f"denominators must be >= 1, got {d}")
        total += Fraction(1, d)
    return total


def unit_denominator(q: Rational) -> int | None:
    """Return ``k`` if ``q == 1/k`` for a positive integer ``k``, else None."""
    if q > 0 and q.numerator == 1:
        return q.denominator
    return None
