"""Quantitative tame bound for ``f -> G(f, x)`` in ``H^n``.

``beta_md`` / ``b_md`` are the universal polynomials ``P_m`` evaluated at the
suprema of ``G`` weighted by ``1 - l/m`` and ``l/m`` respectively;
``gamma_nd`` and ``c_nd`` combine them into the two coefficients of

    ||G(f) - G(0)||_n <= gamma(rho) ||f||_n + c(rho) ||f||_L2,   rho = S_ad ||f||_a.

At ``rho = 0`` the ``1/rho`` in the substitution cancels against ``rho**j``,
so only the ``j = 1`` terms survive; that limit is evaluated directly.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from .combinatorics import pm_evaluate, pm_polynomial
from .constants import adams_frazier_U, embedding_constant
from .errors import BallViolation, DomainError
from .gmodel import ComplexMonomial, GModel, RealMonomial

__all__ = [
    "OrderTerm",
    "BoundReport",
    "beta_md",
    "b_md",
    "gamma_nd",
    "c_nd",
    "tame_bound",
    "monomial_B",
    "monomial_Gamma",
]


def _u(m: int, j: int, d: int, freeze_u: bool) -> float:
    return 1.0 if freeze_u else adams_frazier_U(m, j, d)


def _weighted_pm(model: GModel, m: int, d: int, rho: float, weight, freeze_u: bool) -> float:
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    model.check_rho(rho)
    poly = pm_polynomial(m)
    # P_m at nu = w U sigma / rho, regrouped by powers rho^(j-1) so no division
    # by rho occurs; at rho = 0 only the j = 1 group survives.
    by_j = [0.0] * (m + 1)
    for (j, l), c in poly.coeffs.items():
        w = weight(l, m)
        if w:
            by_j[j] += c * w * _u(m - l, j, d, freeze_u) * model.sigma_jl(j, l, rho, d)
    total = 0.0
    for j in range(m, 0, -1):
        total = total * rho + by_j[j]
    return total


def _beta_weight(l: int, m: int) -> float:
    return 1.0 - l / m


def _b_weight(l: int, m: int) -> float:
    return l / m


def beta_md(model: GModel, m: int, d: int, rho: float, freeze_u: bool = False) -> float:
    return _weighted_pm(model, m, d, rho, _beta_weight, freeze_u)


def b_md(model: GModel, m: int, d: int, rho: float, freeze_u: bool = False) -> float:
    return _weighted_pm(model, m, d, rho, _b_weight, freeze_u)


def gamma_nd(model: GModel, n: int, d: int, rho: float, freeze_u: bool = False) -> float:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    vals = [model.flat(0, rho, d)]
    vals += [beta_md(model, m, d, rho, freeze_u) for m in range(1, n + 1)]
    return max(vals)


def c_nd(model: GModel, n: int, d: int, rho: float, freeze_u: bool = False) -> float:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    model.check_rho(rho)
    total = 0.0
    for m in range(1, n + 1):
        y = b_md(model, m, d, rho, freeze_u) + model.flat(m, rho, d)
        total += math.comb(n, m) * y * y
    return math.sqrt(total)


@dataclass(frozen=True)
class OrderTerm:
    """Bound ``||grad^m (G(f) - G(0))||_L2 <= x_coeff ||grad^m f|| + y_coeff ||f||``."""

    m: int
    x_coeff: float
    y_coeff: float
    rhs: Optional[float] = None


@dataclass(frozen=True)
class BoundReport:
    n: int
    a: int
    d: int
    rho: float
    gamma_nd: float
    c_nd: float
    upsilon: float
    norm_a: float
    norm_n: float
    norm_L2: float
    bound: float
    weak_bound: float
    per_order: tuple[OrderTerm, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return asdict(self)


def tame_bound(
    model: GModel,
    n: int,
    a: int,
    d: int,
    norm_a: float,
    norm_n: float,
    norm_L2: float,
    grad_norms: Optional[Sequence[float]] = None,
    freeze_u: bool = False,
) -> BoundReport:
    """Right-hand side of the tame estimate for a field with the given norms.

    ``grad_norms[m] = ||grad^m f||_L2`` (``m = 0..n``) fills in the per-order
    right-hand sides; without them only the coefficients are reported.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if min(norm_a, norm_n, norm_L2) < 0:
        raise DomainError("norms must be nonnegative")
    s_ad = embedding_constant((a, d))
    rho = s_ad * norm_a
    if rho >= model.radius:
        raise BallViolation(
            f"ball condition S_ad * ||f||_a < r fails: {s_ad!r} * {norm_a!r} = {rho!r} >= {model.radius!r}"
        )
    if grad_norms is not None and len(grad_norms) < n + 1:
        raise DomainError(f"need {n + 1} gradient norms, got {len(grad_norms)}")
    gamma = gamma_nd(model, n, d, rho, freeze_u)
    c = c_nd(model, n, d, rho, freeze_u)
    terms = []
    for m in range(n + 1):
        if m == 0:
            x, y = model.flat(0, rho, d), 0.0
        else:
            x = beta_md(model, m, d, rho, freeze_u)
            y = b_md(model, m, d, rho, freeze_u) + model.flat(m, rho, d)
        rhs = None
        if grad_norms is not None:
            rhs = x * grad_norms[m] + y * norm_L2
        terms.append(OrderTerm(m, x, y, rhs))
    return BoundReport(
        n=n,
        a=a,
        d=d,
        rho=rho,
        gamma_nd=gamma,
        c_nd=c,
        upsilon=gamma + c,
        norm_a=norm_a,
        norm_n=norm_n,
        norm_L2=norm_L2,
        bound=gamma * norm_n + c * norm_L2,
        weak_bound=(gamma + c) * norm_n,
        per_order=tuple(terms),
    )


def monomial_B(J: int, m: int, d: int, freeze_u: bool = False) -> float:
    """``P_m`` at ``nu[j, 0] = J!/(J - j)! U[m, j, d]``, ``rho = 1``."""
    if J < 1 or m < 1:
        raise DomainError(f"need J >= 1 and m >= 1, got J={J}, m={m}")
    poly = pm_polynomial(m)
    nu = {(j, 0): math.perm(J, j) * _u(m, j, d, freeze_u) for j in range(1, min(J, m) + 1)}
    return pm_evaluate(poly, nu, 1.0)


def monomial_Gamma(J: int, n: int, d: int, freeze_u: bool = False) -> float:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return max([1.0] + [monomial_B(J, m, d, freeze_u) for m in range(1, n + 1)])


def monomial_exponent(model: GModel) -> Optional[int]:
    """Total degree ``J`` for monomial kinds, ``None`` otherwise."""
    if isinstance(model, (RealMonomial, ComplexMonomial)):
        return model.J
    return None
