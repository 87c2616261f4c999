"""Explicit numeric constants: ``E(s) = s**s``, the sharp H^a -> L^inf
embedding constant, the Adams-Frazier constants ``U[m, j, d]`` and the sharp
Hausdorff-Young constant."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError

__all__ = [
    "INF",
    "Infinity",
    "EmbeddingParams",
    "gamma_fn",
    "func_E",
    "log_E",
    "embedding_constant",
    "adams_frazier_U",
    "hausdorff_young_C",
]


class Infinity:
    """The exponent ``r = +inf``; ``1/r`` is read as 0."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __float__(self) -> float:
        return math.inf


INF = Infinity()

Exponent = Union[float, int, Infinity]


def gamma_fn(x: float) -> float:
    """Gamma function; integer and half-integer arguments go through exact
    factorial formulas so the embedding constants are bit-reproducible."""
    if x <= 0 and float(x).is_integer():
        raise DomainError(f"Gamma has a pole at {x}")
    twice = 2 * x
    if float(twice).is_integer() and x > 0:
        n2 = int(round(twice))
        if n2 % 2 == 0:
            return float(math.factorial(n2 // 2 - 1))
        # Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
        n = (n2 - 1) // 2
        return float(Fraction(math.factorial(2 * n), 4**n * math.factorial(n))) * math.sqrt(math.pi)
    return math.gamma(x)


def func_E(s: float) -> float:
    """``s**s`` with the limit value 1 at ``s = 0``."""
    if s < 0:
        raise DomainError(f"E(s) needs s >= 0, got {s}")
    if s == 0:
        return 1.0
    return float(s) ** float(s)


def log_E(s: float) -> float:
    if s < 0:
        raise DomainError(f"E(s) needs s >= 0, got {s}")
    return 0.0 if s == 0 else s * math.log(s)


@dataclass(frozen=True)
class EmbeddingParams:
    a: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(f"dimension must be >= 1, got {self.d}")
        if not 2 * self.a > self.d:
            raise DomainError(f"embedding needs a > d/2, got a={self.a}, d={self.d}")


def embedding_constant(params: EmbeddingParams | tuple[int, int]) -> float:
    """Sharp constant ``S[a, d]`` in ``||f||_inf <= S[a, d] ||f||_a``."""
    if not isinstance(params, EmbeddingParams):
        params = EmbeddingParams(*params)
    a, d = params.a, params.d
    ratio = gamma_fn(a - d / 2) / gamma_fn(a)
    return (4 * math.pi) ** (-d / 4) * math.sqrt(ratio)


def adams_frazier_U(m: int, j: int, d: int) -> float:
    if not 1 <= j <= m:
        raise DomainError(f"U[m, j, d] needs 1 <= j <= m, got m={m}, j={j}")
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    t = (j - 1) / (2 * m)
    log_first = log_E(0.5 - t) - log_E(0.5 + t)
    log_second = log_E(1 / (2 * m)) - log_E(1 - 1 / (2 * m))
    return math.exp(0.5 * d * log_first + 0.5 * (j - 1) * d * log_second)


def hausdorff_young_C(r: Exponent, d: int) -> float:
    """Sharp constant for ``||F^-1 T||_{L^r} <= C ||T||_{L^p}``, ``1/p + 1/r = 1``."""
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if isinstance(r, Infinity):
        inv_r = 0.0
    else:
        if r < 2:
            raise DomainError(f"Hausdorff-Young constant needs r >= 2, got {r}")
        inv_r = 1.0 / r
    log_c = -(d / 2 - d * inv_r) * math.log(2 * math.pi)
    log_c += 0.5 * d * (log_E(inv_r) - log_E(1 - inv_r))
    return math.exp(log_c)
