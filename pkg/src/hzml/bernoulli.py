"""Exact Bernoulli numbers, cached as Fractions with float views."""

from __future__ import annotations

import math
from fractions import Fraction

_CACHE: list[Fraction] = [Fraction(1)]


def bernoulli_fraction(n: int) -> Fraction:
    """B_n (convention B_1 = -1/2) from the defining recurrence
    sum_{j=0}^{m} C(m+1, j) B_j = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    while len(_CACHE) <= n:
        m = len(_CACHE)
        acc = Fraction(0)
        for j, bj in enumerate(_CACHE):
            acc += math.comb(m + 1, j) * bj
        _CACHE.append(-acc / (m + 1))
    return _CACHE[n]


def bernoulli_float(n: int) -> float:
    return float(bernoulli_fraction(n))
