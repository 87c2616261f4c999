"""Dense tensor algebra over ``C^d``: tensor product, index permutations,
symmetrization, the symmetrized product ``vee``, conjugation and norms.

The array kernels (``*_array``) act on the leading ``order`` axes of an array
and broadcast over any trailing axes, so the same code serves a single
tensor, a tensor field sampled on a grid, and object arrays of exact
polynomials.  :class:`SymTensor` wraps a single tensor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "MAX_SYM_ORDER",
    "MAX_COMPONENTS",
    "TensorCapError",
    "SymTensor",
    "outer_array",
    "permute_array",
    "symmetrize_array",
    "vee_array",
    "tensor_product",
    "symmetrize",
    "vee",
    "vee_power",
    "norm",
    "conjugate",
    "permute",
    "is_symmetric",
    "rel_close",
]

MAX_SYM_ORDER = 6
MAX_COMPONENTS = 10**6


class TensorCapError(RuntimeError):
    """Requested tensor exceeds the configured order or size cap."""


@lru_cache(maxsize=None)
def _perms(order: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.permutations(range(order)))


def _check_order(order: int, d: int | None = None) -> None:
    if order > MAX_SYM_ORDER:
        raise TensorCapError(f"symmetrization capped at order {MAX_SYM_ORDER}, got {order}")
    if d is not None and d**order > MAX_COMPONENTS:
        raise TensorCapError(f"d**order = {d}**{order} exceeds {MAX_COMPONENTS} components")


def outer_array(a: np.ndarray, la: int, b: np.ndarray, lb: int) -> np.ndarray:
    """``(a (x) b)[lam, mu] = a[lam] b[mu]`` with shared trailing batch axes."""
    batch = a.shape[la:]
    if b.shape[lb:] != batch:
        raise DomainError(f"batch shapes differ: {batch} vs {b.shape[lb:]}")
    ia = a.shape[:la]
    ib = b.shape[:lb]
    na = int(np.prod(ia, dtype=np.int64))
    nb = int(np.prod(ib, dtype=np.int64))
    out = a.reshape((na, 1) + batch) * b.reshape((1, nb) + batch)
    return out.reshape(ia + ib + batch)


def permute_array(arr: np.ndarray, order: int, sigma: Sequence[int]) -> np.ndarray:
    """``(P_sigma T)[l_1..l_k] = T[l_sigma(1)..l_sigma(k)]`` (0-based ``sigma``)."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(order)):
        raise DomainError(f"{sigma} is not a permutation of {order} positions")
    inv = [0] * order
    for k, s in enumerate(sigma):
        inv[s] = k
    axes = tuple(inv) + tuple(range(order, arr.ndim))
    return np.transpose(arr, axes)


def symmetrize_array(arr: np.ndarray, order: int) -> np.ndarray:
    """Average of ``arr`` over all permutations of its first ``order`` axes."""
    if order <= 1:
        return arr
    _check_order(order)
    perms = _perms(order)
    rest = tuple(range(order, arr.ndim))
    if arr.dtype == object:
        return _symmetrize_object(arr, order)
    acc = np.zeros_like(arr)
    for p in perms:
        acc = acc + np.transpose(arr, p + rest)
    return acc / math.factorial(order)


def _symmetrize_object(arr: np.ndarray, order: int) -> np.ndarray:
    # Exact entries are expensive to add; average once per index multiset.
    d = arr.shape[0]
    out = np.empty_like(arr)
    fact = math.factorial(order)
    for ms in itertools.combinations_with_replacement(range(d), order):
        acc = None
        for p in _perms(order):
            idx = tuple(ms[i] for i in p)
            acc = arr[idx] if acc is None else acc + arr[idx]
        val = acc / fact
        for idx in set(itertools.permutations(ms)):
            out[idx] = val
    return out


def vee_array(a: np.ndarray, la: int, b: np.ndarray, lb: int) -> np.ndarray:
    return symmetrize_array(outer_array(a, la, b, lb), la + lb)


# ---------------------------------------------------------------------------
# Single tensors
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SymTensor:
    """Order-``m`` tensor over dimension ``d`` stored densely, shape ``(d,)*m``."""

    dim: int
    components: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError(f"dimension must be >= 1, got {self.dim}")
        comp = np.asarray(self.components)
        if any(s != self.dim for s in comp.shape):
            raise DomainError(f"shape {comp.shape} is not (d,)*m with d={self.dim}")
        _check_size(self.dim, comp.ndim)
        object.__setattr__(self, "components", comp)

    @property
    def order(self) -> int:
        return self.components.ndim

    @classmethod
    def scalar(cls, value, dim: int) -> "SymTensor":
        return cls(dim, np.asarray(value, dtype=_dtype_of(value)))

    @classmethod
    def zeros(cls, dim: int, order: int, dtype=complex) -> "SymTensor":
        return cls(dim, np.zeros((dim,) * order, dtype=dtype))

    @classmethod
    def vector(cls, values: Sequence) -> "SymTensor":
        arr = np.asarray(values)
        return cls(arr.shape[0], arr)

    def __add__(self, other: "SymTensor") -> "SymTensor":
        _same(self, other)
        return SymTensor(self.dim, self.components + other.components)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        _same(self, other)
        return SymTensor(self.dim, self.components - other.components)

    def __mul__(self, c) -> "SymTensor":
        return SymTensor(self.dim, self.components * c)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        flat = np.asarray(self.components, dtype=complex).ravel()
        return {
            "dim": self.dim,
            "order": self.order,
            "components": [[float(z.real), float(z.imag)] for z in flat],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "SymTensor":
        d, m = int(payload["dim"]), int(payload["order"])
        flat = np.array([complex(re, im) for re, im in payload["components"]], dtype=complex)
        return cls(d, flat.reshape((d,) * m))


def _dtype_of(value):
    if isinstance(value, (int, float, complex, np.number)):
        return complex if isinstance(value, (complex, np.complexfloating)) else float
    return object


def _check_size(d: int, order: int) -> None:
    if d**order > MAX_COMPONENTS:
        raise TensorCapError(f"d**order = {d}**{order} exceeds {MAX_COMPONENTS} components")


def _same(t: SymTensor, u: SymTensor) -> None:
    if t.dim != u.dim:
        raise DomainError(f"dimension mismatch: {t.dim} vs {u.dim}")
    if t.order != u.order:
        raise DomainError(f"order mismatch: {t.order} vs {u.order}")


def tensor_product(t: SymTensor, u: SymTensor) -> SymTensor:
    if t.dim != u.dim:
        raise DomainError(f"dimension mismatch: {t.dim} vs {u.dim}")
    _check_size(t.dim, t.order + u.order)
    return SymTensor(t.dim, outer_array(t.components, t.order, u.components, u.order))


def permute(t: SymTensor, sigma: Sequence[int]) -> SymTensor:
    return SymTensor(t.dim, permute_array(t.components, t.order, sigma))


def symmetrize(t: SymTensor) -> SymTensor:
    _check_order(t.order, t.dim)
    return SymTensor(t.dim, symmetrize_array(t.components, t.order))


def vee(t: SymTensor, u: SymTensor) -> SymTensor:
    if t.dim != u.dim:
        raise DomainError(f"dimension mismatch: {t.dim} vs {u.dim}")
    _check_order(t.order + u.order, t.dim)
    return SymTensor(t.dim, vee_array(t.components, t.order, u.components, u.order))


def vee_power(t: SymTensor, q: int) -> SymTensor:
    """``t v t v ... v t`` (``q`` factors); the scalar 1 for ``q = 0``."""
    if q < 0:
        raise DomainError(f"power must be nonnegative, got {q}")
    _check_order(q * t.order, t.dim)
    if q == 0:
        one = np.ones((), dtype=t.components.dtype)
        if t.components.dtype == object:
            one[()] = 1
        return SymTensor(t.dim, one)
    out = symmetrize(t)
    for _ in range(q - 1):
        out = vee(out, t)
    return out


def norm(t: SymTensor) -> float:
    """Euclidean norm over all ``d**m`` components."""
    return float(np.sqrt(np.sum(np.abs(np.asarray(t.components, dtype=complex)) ** 2)))


def conjugate(t: SymTensor) -> SymTensor:
    c = t.components
    if c.dtype == object:
        return SymTensor(t.dim, np.vectorize(lambda z: z.conjugate(), otypes=[object])(c))
    return SymTensor(t.dim, np.conj(c))


def is_symmetric(t: SymTensor, rtol: float = 1e-12) -> bool:
    base = t.components
    scale = max(norm(t), 1e-300)
    for p in _perms(t.order):
        diff = np.asarray(np.transpose(base, p) - base, dtype=complex)
        if np.sqrt(np.sum(np.abs(diff) ** 2)) > rtol * scale:
            return False
    return True


def rel_close(t: SymTensor, u: SymTensor, rtol: float = 1e-12) -> bool:
    """Equality up to ``rtol`` relative to the larger of the two norms."""
    _same(t, u)
    scale = max(norm(t), norm(u))
    if scale == 0:
        return True
    return norm(t - u) <= rtol * scale
