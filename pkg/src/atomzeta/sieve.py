"""Prime sieving for the degree-1 Euler sum and the X = primes builders."""

from __future__ import annotations

from math import isqrt

import numpy as np


def primes_upto(n: int) -> list[int]:
    """All primes <= n, ascending (simple numpy Eratosthenes)."""
    if n < 2:
        return []
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for i in range(2, isqrt(n) + 1):
        if mask[i]:
            mask[i * i :: i] = False
    return [int(p) for p in np.flatnonzero(mask)]
