"""Tensor Faa di Bruno expansion of ``grad^m G(f, x)``, evaluated two ways.

The expansion side sums ``d^h dbar^k grad^l G(f, x)`` against symmetrized
products of ``grad^s f`` and ``conj(grad^s f)`` weighted by the integer
coefficients of :mod:`tamecalc.combinatorics`.  Because every product is a
``vee`` product, all terms are accumulated as plain tensor products and
symmetrized once at the end.

Exact path: ``G`` is a :class:`~tamecalc.exact.Polynomial` in
``(z, zbar, x_1..x_d)`` (complex) or ``(u, x_1..x_d)`` (real) and ``f`` a
polynomial in ``x``; both sides are computed symbolically and compared with
``==``.  Grid path: ``G`` is a :class:`~tamecalc.gmodel.GModel`, ``f`` a
:class:`GridField`, and the direct side is the spectral ``grad_m``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from ..combinatorics import (
    PartitionSeq,
    enumerate_Dhkw,
    enumerate_Djw,
    fdb_coeff_complex,
    fdb_coeff_real,
)
from ..errors import DomainError
from ..exact import QI, Polynomial, grad_poly_tensor, substitute
from ..gmodel import ComplexMonomial, GModel, RealMonomial, RealPolynomial
from ..symtensor import outer_array, symmetrize_array
from .grid import GridField, compose, grad_m

__all__ = [
    "expansion_terms",
    "exact_sides",
    "grid_sides",
    "exact_model",
]


def expansion_terms(m: int, complex_case: bool) -> Iterator[tuple[int, int, int, list]]:
    """Yield ``(h, k, l, [(coeff, p, q), ...])`` over the index set of the expansion.

    In the real case ``k = 0`` and ``q`` is the empty sequence.
    """
    empty = PartitionSeq(())
    for j in range(1, m + 1):
        for l in range(0, m - j + 1):
            if not complex_case:
                parts = [(fdb_coeff_real(m, p), p, empty) for p in enumerate_Djw(j, m - l)]
                yield j, 0, l, parts
                continue
            for h in range(j + 1):
                pairs = enumerate_Dhkw(h, j - h, m - l)
                yield h, j - h, l, [(fdb_coeff_complex(m, pq), pq.p, pq.q) for pq in pairs]


def _product(p: PartitionSeq, q: PartitionSeq, grads, conj_grads, one):
    """Unsymmetrized ``(x) grad^s f`` over ``p`` then ``(x) conj(grad^s f)`` over ``q``."""
    acc, order = one, 0
    for seq, source in ((p, grads), (q, conj_grads)):
        for s, ps in enumerate(seq.entries, start=1):
            for _ in range(ps):
                acc = outer_array(acc, order, source(s), s)
                order += s
    return acc


def _assemble(m: int, complex_case: bool, g_tensor: Callable, grads, conj_grads, one, skip_l: bool):
    total = None
    for h, k, l, parts in expansion_terms(m, complex_case):
        if skip_l and l > 0:
            continue
        w = None
        for c, p, q in parts:
            t = _product(p, q, grads, conj_grads, one)
            t = t * c
            w = t if w is None else w + t
        g = g_tensor(h, k, l)
        term = outer_array(g, l, w, m - l)
        total = term if total is None else total + term
    return symmetrize_array(total, m)


# ---------------------------------------------------------------------------
# Exact path
# ---------------------------------------------------------------------------


def _grad_x(arr: np.ndarray, offset: int, d: int) -> np.ndarray:
    out = np.empty(arr.shape + (d,), dtype=object)
    for idx in itertools.product(*(range(s) for s in arr.shape)):
        for i in range(d):
            out[idx + (i,)] = arr[idx].diff(offset + i)
    return out


def _poly_array(p: Polynomial) -> np.ndarray:
    a = np.empty((), dtype=object)
    a[()] = p
    return a


def exact_model(model: GModel, d: int) -> tuple[Polynomial, bool]:
    """Polynomial form of a monomial/polynomial model: ``(G, complex_case)``."""
    if isinstance(model, ComplexMonomial):
        nv = 2 + d
        e = [0] * nv
        e[0], e[1] = model.H, model.K
        return Polynomial(nv, {tuple(e): Fraction(1)}), True
    if isinstance(model, RealMonomial):
        e = [0] * (1 + d)
        e[0] = model.J
        return Polynomial(1 + d, {tuple(e): Fraction(1)}), False
    if isinstance(model, RealPolynomial):
        terms = {}
        for i, c in enumerate(model.coeffs):
            e = [0] * (1 + d)
            e[0] = i
            terms[tuple(e)] = Fraction(c)
        return Polynomial(1 + d, terms), False
    raise DomainError(f"model kind {model.kind!r} has no exact polynomial form")


def exact_sides(G: Polynomial, f: Polynomial, m: int, complex_case: bool):
    """``(direct, expansion)`` object arrays of shape ``(d,)*m``."""
    d = f.nvars
    offset = 2 if complex_case else 1
    if G.nvars != offset + d:
        raise DomainError(f"G needs {offset + d} variables for d={d}, got {G.nvars}")
    xs = [Polynomial.var(d, i) for i in range(d)]
    fbar = f.conjugate()
    args = ([f, fbar] if complex_case else [f]) + xs

    direct = _poly_array(substitute(G, args))
    for _ in range(m):
        direct = grad_poly_tensor(direct)

    fgrad = [_poly_array(f)]
    for _ in range(m):
        fgrad.append(grad_poly_tensor(fgrad[-1]))
    conj_grad = [np.vectorize(lambda z: z.conjugate(), otypes=[object])(t) for t in fgrad]

    cache: dict = {}

    def g_tensor(h, k, l):
        key = (h, k, l)
        if key not in cache:
            base = G
            for _ in range(h):
                base = base.diff(0)
            for _ in range(k):
                base = base.diff(1)
            arr = _poly_array(base)
            for _ in range(l):
                arr = _grad_x(arr, offset, d)
            cache[key] = np.vectorize(lambda p: substitute(p, args), otypes=[object])(arr)
        return cache[key]

    one = _poly_array(Polynomial.const(d, Fraction(1)))
    expansion = _assemble(
        m, complex_case, g_tensor, lambda s: fgrad[s], lambda s: conj_grad[s], one, skip_l=False
    )
    expansion = expansion + g_tensor(0, 0, m)
    return direct, expansion


# ---------------------------------------------------------------------------
# Grid path
# ---------------------------------------------------------------------------


def grid_sides(model: GModel, f: GridField, m: int, complex_case: bool | None = None):
    """``(direct, expansion)`` complex arrays of shape ``(d,)*m + grid``."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    s = f.spec
    if complex_case is None:
        complex_case = (not f.is_real) or isinstance(model, ComplexMonomial)
    direct = grad_m(compose(model, f), m).components
    grads = {i: grad_m(f, i).components for i in range(1, m + 1)}
    conj_grads = {i: np.conj(g) for i, g in grads.items()}
    x = s.points
    vals = f.values

    def g_tensor(h, k, l):
        return model.partial_tensor(h, k, l, vals, x, s.d)

    one = np.ones(s.shape, dtype=complex)
    expansion = _assemble(
        m, complex_case, g_tensor, grads.__getitem__, conj_grads.__getitem__, one,
        skip_l=model.x_independent,
    )
    if not model.x_independent:
        expansion = expansion + model.partial_tensor(0, 0, m, vals, x, s.d)
    return direct, expansion
