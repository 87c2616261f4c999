"""Numerical certification of the inequalities on sampled fields.

Every ``verify_*`` returns a :class:`CertRecord`; a record passes iff
``lhs <= rhs * (1 + tolerance)``.  Records may carry ``children`` (per-order
checks, the two interpolation forms); a parent passes only if all children do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any, Optional, Sequence

import numpy as np

from ..constants import adams_frazier_U, embedding_constant, func_E
from ..errors import DomainError
from ..estimates import tame_bound
from ..exact import Polynomial
from ..gmodel import GModel
from ..symtensor import outer_array, symmetrize_array, MAX_SYM_ORDER, TensorCapError
from .faadibruno import exact_model, exact_sides, grid_sides
from .grid import (
    GridField,
    GridSpec,
    TensorField,
    compose,
    grad_m,
    grad_norm,
    lp_norm,
    sobolev_norm,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "CertRecord",
    "certify",
    "verify_tame",
    "verify_embedding",
    "verify_interpolation",
    "verify_gagliardo",
    "verify_adams_frazier",
    "verify_faadibruno",
    "default_grid",
]

DEFAULT_TOLERANCE = 1e-6


@dataclass(frozen=True)
class CertRecord:
    name: str
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    tolerance: float
    params: dict = field(default_factory=dict)
    children: tuple["CertRecord", ...] = ()

    def flatten(self) -> list["CertRecord"]:
        out = [self]
        for c in self.children:
            out.extend(c.flatten())
        return out

    def scaled(self, factor: float) -> "CertRecord":
        """Same check with the left side multiplied by ``factor`` (negative controls)."""
        kids = tuple(c.scaled(factor) for c in self.children)
        return certify(self.name, self.lhs * factor, self.rhs, self.tolerance, self.params, kids)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "pass": self.passed,
            "tolerance": self.tolerance,
            "params": self.params,
            "children": [c.to_dict() for c in self.children],
        }


def _ratio(lhs: float, rhs: float) -> float:
    if rhs > 0:
        return lhs / rhs
    return 0.0 if lhs <= 0 else math.inf


def certify(
    name: str,
    lhs: float,
    rhs: float,
    tolerance: float = DEFAULT_TOLERANCE,
    params: Optional[dict] = None,
    children: Sequence[CertRecord] = (),
) -> CertRecord:
    lhs, rhs = float(lhs), float(rhs)
    ok = lhs <= rhs * (1 + tolerance) and all(c.passed for c in children)
    return CertRecord(name, lhs, rhs, _ratio(lhs, rhs), ok, tolerance, dict(params or {}), tuple(children))


def default_grid(d: int) -> GridSpec:
    if d == 1:
        return GridSpec(1, 256, 16.0)
    if d == 2:
        return GridSpec(2, 128, 16.0)
    if d == 3:
        return GridSpec(3, 64, 12.0)
    raise DomainError(f"no default grid for d = {d}")


def _check_a(a, d: int) -> None:
    if not 2 * a > d:
        raise DomainError(f"need a > d/2, got a={a}, d={d}")


# ---------------------------------------------------------------------------


def verify_tame(
    model: GModel,
    f: GridField,
    n: int,
    a: int,
    tolerance: float = DEFAULT_TOLERANCE,
    freeze_u: bool = False,
) -> CertRecord:
    d = f.spec.d
    _check_a(a, d)
    norm_a = sobolev_norm(f, a)
    grads = [grad_norm(f, m) for m in range(n + 1)]
    report = tame_bound(
        model, n, a, d, norm_a, sobolev_norm(f, n), grads[0], grad_norms=grads, freeze_u=freeze_u
    )
    diff = compose(model, f) - compose(model, GridField(f.spec, np.zeros_like(f.values)))
    lhs = sobolev_norm(diff, n)
    params = {"model": model.to_dict(), "n": n, "a": a, "d": d, "rho": report.rho}
    kids = []
    for term in report.per_order:
        kids.append(
            certify(
                f"tame.order{term.m}",
                grad_norm(diff, term.m),
                term.rhs,
                tolerance,
                {"m": term.m, "x_coeff": term.x_coeff, "y_coeff": term.y_coeff},
            )
        )
    return certify("tame", lhs, report.bound, tolerance, params, kids)


def verify_embedding(f: GridField, a, tolerance: float = DEFAULT_TOLERANCE) -> CertRecord:
    d = f.spec.d
    _check_a(a, d)
    s_ad = embedding_constant((a, d))
    return certify("embedding", lp_norm(f, math.inf), s_ad * sobolev_norm(f, a), tolerance, {"a": a, "d": d})


def verify_interpolation(f: GridField, l: int, m: int, tolerance: float = DEFAULT_TOLERANCE) -> CertRecord:
    if not 0 <= l <= m:
        raise DomainError(f"need 0 <= l <= m, got l={l}, m={m}")
    lhs = grad_norm(f, l)
    f0 = grad_norm(f, 0)
    fm = grad_norm(f, m)
    t = 1.0 if m == 0 else l / m
    mult = f0 ** (1 - t) * fm**t
    mean = (1 - t) * f0 + t * fm
    params = {"l": l, "m": m, "d": f.spec.d}
    kids = (
        certify("interpolation.multiplicative", lhs, mult, tolerance, params),
        certify("interpolation.mean", mult, mean, tolerance, params),
    )
    return certify("interpolation", lhs, mean, tolerance, params, kids)


def _gagliardo_constant(l: int, m: int, d: int) -> float:
    if m == 0:
        return 1.0
    s = l / (2 * m)
    return (func_E(s) / func_E(1 - s)) ** (d / 2)


def verify_gagliardo(f: GridField, l: int, m: int, a, tolerance: float = DEFAULT_TOLERANCE) -> CertRecord:
    """``||grad^l f||_{L^{2m/l}} <= K (S ||f||_a)^(1 - l/m) ||grad^m f||^(l/m)``.

    ``l = 0`` reads as the ``L^inf`` norm; ``l = m = 0`` as ``L^2`` with ``l/m = 1``.
    """
    d = f.spec.d
    _check_a(a, d)
    if not 0 <= l <= m:
        raise DomainError(f"need 0 <= l <= m, got l={l}, m={m}")
    if m == 0:
        p, t = 2.0, 1.0
    else:
        p, t = (math.inf if l == 0 else 2 * m / l), l / m
    lhs = lp_norm(grad_m(f, l), p)
    low = embedding_constant((a, d)) * sobolev_norm(f, a)
    rhs = _gagliardo_constant(l, m, d) * low ** (1 - t) * grad_norm(f, m) ** t
    return certify("gagliardo", lhs, rhs, tolerance, {"l": l, "m": m, "a": a, "d": d})


def verify_adams_frazier(
    f: GridField,
    orders: Sequence[int],
    conj_orders: Sequence[int] = (),
    a: int = 1,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CertRecord:
    d = f.spec.d
    _check_a(a, d)
    orders, conj_orders = list(orders), list(conj_orders)
    if not orders + conj_orders or min(orders + conj_orders) < 1:
        raise DomainError("need at least one factor, all orders >= 1")
    m = sum(orders) + sum(conj_orders)
    if m > MAX_SYM_ORDER:
        raise TensorCapError(f"product order {m} exceeds the symmetrization cap {MAX_SYM_ORDER}")
    cache = {}

    def grad(i):
        if i not in cache:
            cache[i] = grad_m(f, i).components
        return cache[i]

    acc, order = np.ones(f.spec.shape, dtype=complex), 0
    for i in orders:
        acc = outer_array(acc, order, grad(i), i)
        order += i
    for g in conj_orders:
        acc = outer_array(acc, order, np.conj(grad(g)), g)
        order += g
    prod = TensorField(f.spec, m, symmetrize_array(acc, m))
    lhs = lp_norm(prod, 2)
    factors = len(orders) + len(conj_orders)
    low = embedding_constant((a, d)) * sobolev_norm(f, a)
    rhs = adams_frazier_U(m, factors, d) * low ** (factors - 1) * grad_norm(f, m)
    params = {"orders": orders, "conj_orders": conj_orders, "a": a, "d": d}
    return certify("adams_frazier", lhs, rhs, tolerance, params)


def verify_faadibruno(model, f, m: int, tolerance: float = 1e-8, complex_case: Optional[bool] = None) -> CertRecord:
    """Expansion vs direct ``grad^m``.

    With an exact polynomial ``f`` (and a polynomial model or an exact ``G``)
    the comparison is exact; with a :class:`GridField` it is spectral, to
    ``tolerance`` relative to the largest component.
    """
    if not 1 <= m <= 4:
        raise DomainError(f"expansion check supports 1 <= m <= 4, got {m}")
    if isinstance(f, Polynomial):
        if f.nvars > 3:
            raise DomainError(f"expansion check supports d <= 3, got {f.nvars}")
        if isinstance(model, GModel):
            G, cplx = exact_model(model, f.nvars)
        else:
            G = model
            cplx = G.nvars == f.nvars + 2 if complex_case is None else complex_case
        direct, expansion = exact_sides(G, f, m, cplx)
        bad = sum(1 for x, y in zip(direct.ravel(), expansion.ravel()) if not x == y)
        params = {"m": m, "d": f.nvars, "path": "exact", "complex": cplx, "mismatches": bad}
        return certify("faadibruno", float(bad), 0.0, 0.0, params)
    if f.spec.d > 3:
        raise DomainError(f"expansion check supports d <= 3, got {f.spec.d}")
    direct, expansion = grid_sides(model, f, m, complex_case)
    scale = float(np.max(np.abs(direct)))
    err = float(np.max(np.abs(direct - expansion)))
    params = {"m": m, "d": f.spec.d, "path": "spectral", "model": model.to_dict()}
    if scale == 0:
        return certify("faadibruno", err, 0.0, 0.0, params)
    return certify("faadibruno", err / scale, tolerance, 0.0, params)
