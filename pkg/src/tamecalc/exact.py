"""Exact arithmetic for the symbolic verification paths.

:class:`QI` is a Gaussian rational ``re + i im`` with :class:`Fraction`
parts; :class:`Polynomial` is a sparse multivariate polynomial in
``x_1..x_d`` with ``Fraction`` or ``QI`` coefficients.  Both support the
operations numpy object arrays need (``+``, ``-``, ``*``, ``/`` by a number,
``conjugate``), so they drop straight into :mod:`tamecalc.symtensor`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Union

import numpy as np

__all__ = [
    "QI",
    "Polynomial",
    "substitute",
    "grad_poly_tensor",
    "random_fraction",
    "random_qi",
    "random_polynomial",
    "iter_indices",
]

Number = Union[int, Fraction, "QI"]


class QI:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def lift(x) -> "QI":
        if isinstance(x, QI):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return QI(x, 0)

    def __add__(self, o):
        o = QI.lift(o)
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, o):
        o = QI.lift(o)
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return QI.lift(o) - self

    def __mul__(self, o):
        o = QI.lift(o)
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, QI):
            den = o.re * o.re + o.im * o.im
            return self * QI(o.re / den, -o.im / den)
        o = Fraction(o)
        return QI(self.re / o, self.im / o)

    def __pow__(self, n: int):
        out = QI(1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "QI":
        return QI(self.re, -self.im)

    def __eq__(self, o):
        try:
            o = QI.lift(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QI({self.re}, {self.im})"


def _conj(c):
    return c.conjugate() if isinstance(c, QI) else c


class Polynomial:
    """Sparse polynomial ``{exponent tuple: coefficient}`` in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Number] | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def _lift(self, o) -> "Polynomial":
        if isinstance(o, Polynomial):
            if o.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return o
        return Polynomial.const(self.nvars, o)

    def __add__(self, o):
        o = self._lift(o)
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            out[e] = c if v is None else v + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        if not isinstance(o, Polynomial):
            if not o:
                return Polynomial(self.nvars)
            return Polynomial(self.nvars, {e: c * o for e, c in self.terms.items()})
        o = self._lift(o)
        out: dict[tuple[int, ...], Number] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                p = c1 * c2
                out[e] = p if v is None else v + p
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, int):
            o = Fraction(o)
        return Polynomial(self.nvars, {e: c / o for e, c in self.terms.items()})

    def __pow__(self, n: int):
        out = Polynomial.const(self.nvars, Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: _conj(c) for e, c in self.terms.items()})

    def diff(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Polynomial(self.nvars, out)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __call__(self, x) -> complex:
        total = 0j
        for e, c in self.terms.items():
            term = complex(c) if isinstance(c, QI) else float(c)
            for xi, k in zip(x, e):
                term *= xi**k
            total += term
        return total

    def __eq__(self, o):
        # zero coefficients are dropped on construction, so term dicts compare directly
        if not isinstance(o, Polynomial):
            o = self._lift(o)
        return self.nvars == o.nvars and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.terms!r})"


def substitute(poly: Polynomial, args: list[Polynomial]) -> Polynomial:
    """``poly(args[0], ..., args[n-1])`` with polynomial arguments."""
    if len(args) != poly.nvars:
        raise ValueError(f"need {poly.nvars} arguments, got {len(args)}")
    nv = args[0].nvars
    powers: list[list[Polynomial]] = [[Polynomial.const(nv, Fraction(1))] for _ in args]
    out = Polynomial(nv)
    for e, c in poly.terms.items():
        term = Polynomial.const(nv, c)
        for i, k in enumerate(e):
            while len(powers[i]) <= k:
                powers[i].append(powers[i][-1] * args[i])
            if k:
                term = term * powers[i][k]
        out = out + term
    return out


def grad_poly_tensor(arr: np.ndarray) -> np.ndarray:
    """``(grad T)[l_1..l_k, l_{k+1}] = d/dx_{l_{k+1}} T[l_1..l_k]`` on an
    object array of polynomials; the new index is appended last."""
    flat = arr.reshape(-1) if arr.ndim else arr.reshape(1)
    first = flat[0]
    d = first.nvars
    out = np.empty(arr.shape + (d,), dtype=object)
    for idx in itertools.product(*(range(s) for s in arr.shape)):
        p = arr[idx]
        for i in range(d):
            out[idx + (i,)] = p.diff(i)
    return out


def random_fraction(rng: np.random.Generator, num: int = 5, den: int = 4) -> Fraction:
    return Fraction(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))


def random_qi(rng: np.random.Generator, num: int = 5, den: int = 4) -> QI:
    return QI(random_fraction(rng, num, den), random_fraction(rng, num, den))


def random_polynomial(
    rng: np.random.Generator,
    nvars: int,
    degree: int,
    n_terms: int,
    complex_coeffs: bool = False,
) -> Polynomial:
    exps = [e for e in itertools.product(range(degree + 1), repeat=nvars) if sum(e) <= degree]
    pick = rng.choice(len(exps), size=min(n_terms, len(exps)), replace=False)
    draw = random_qi if complex_coeffs else random_fraction
    return Polynomial(nvars, {exps[i]: draw(rng) for i in pick})


def iter_indices(d: int, order: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(d), repeat=order)
