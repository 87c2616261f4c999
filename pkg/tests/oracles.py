"""Independent reference values and slow-but-obvious oracles for the tests."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

# Low-order table transcribed by hand: {m: {(j, l): coefficient}}.
PM_TABLE = {
    1: {(1, 0): 1},
    2: {(2, 0): 1, (1, 0): 1, (1, 1): 2},
    3: {(3, 0): 1, (2, 0): 3, (2, 1): 3, (1, 0): 1, (1, 1): 3, (1, 2): 3},
    4: {
        (4, 0): 1,
        (3, 0): 6, (3, 1): 4,
        (2, 0): 7, (2, 1): 12, (2, 2): 6,
        (1, 0): 1, (1, 1): 4, (1, 2): 6, (1, 3): 4,
    },
    5: {
        (5, 0): 1,
        (4, 0): 10, (4, 1): 5,
        (3, 0): 25, (3, 1): 30, (3, 2): 10,
        (2, 0): 15, (2, 1): 35, (2, 2): 30, (2, 3): 10,
        (1, 0): 1, (1, 1): 5, (1, 2): 10, (1, 3): 10, (1, 4): 5,
    },
    6: {
        (6, 0): 1,
        (5, 0): 15, (5, 1): 6,
        (4, 0): 65, (4, 1): 60, (4, 2): 15,
        (3, 0): 90, (3, 1): 150, (3, 2): 90, (3, 3): 20,
        (2, 0): 31, (2, 1): 90, (2, 2): 105, (2, 3): 60, (2, 4): 15,
        (1, 0): 1, (1, 1): 6, (1, 2): 15, (1, 3): 20, (1, 4): 15, (1, 5): 6,
    },
}


def _series_mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b[: n + 1 - i]):
                out[i + k] += x * y
    return out


def pm_coeff_series(m: int, j: int, l: int) -> int:
    """``m!`` times the ``xi^m`` coefficient of ``(e^xi - 1)^j xi^l / (j! l!)``."""
    expm1 = [Fraction(0)] + [Fraction(1, math.factorial(k)) for k in range(1, m + 1)]
    acc = [Fraction(1)] + [Fraction(0)] * m
    for _ in range(j):
        acc = _series_mul(acc, expm1, m)
    coeff = acc[m - l] if m - l >= 0 else Fraction(0)
    val = coeff * math.factorial(m) / (math.factorial(j) * math.factorial(l))
    assert val.denominator == 1
    return int(val)


def stirling_bruteforce(j: int, m: int) -> int:
    """Surjections {1..m} -> {1..j} divided by j!."""
    if j == 0:
        return int(m == 0)
    count = sum(1 for f in itertools.product(range(j), repeat=m) if len(set(f)) == j)
    return count // math.factorial(j)


def partitions_bruteforce(j: int, w: int):
    """All ``p`` with ``sum p_s = j`` and ``sum s p_s = w`` by exhaustive search."""
    out = []
    for p in itertools.product(*(range(j + 1) for _ in range(w))):
        if sum(p) == j and sum((s + 1) * ps for s, ps in enumerate(p)) == w:
            out.append(p)
    return out


def gamma_reference(x: float) -> float:
    return math.exp(math.lgamma(x))
