"""Periodic grids standing in for ``R^d``, sampled fields, and spectral calculus.

Conventions: nodes ``x_j = -L/2 + j L/N`` per axis, wavenumbers
``k = 2 pi m / L`` for ``m`` in ``[-N/2, N/2)`` (numpy ``fftfreq`` order), and
the unitary transform ``(2 pi)^(-d/2) int exp(-i k.x) f(x) dx`` approximated by
the rectangle rule.  Fourier-side integrals carry the lattice cell
``(2 pi / L)^d``; physical-side integrals carry ``(L / N)^d``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from ..errors import DomainError
from ..gmodel import GModel
from ..symtensor import TensorCapError

__all__ = [
    "MAX_GRID_POINTS",
    "MAX_TENSOR_ENTRIES",
    "MAX_GRAD_ORDER",
    "GridSpec",
    "GridField",
    "TensorField",
    "sobolev_norm",
    "sobolev_norm_fourier",
    "sobolev_norm_binomial",
    "grad_m",
    "grad_norm",
    "lp_norm",
    "compose",
    "gaussian",
    "modulated_gaussian",
    "bessel_kernel",
    "plane_wave",
    "from_spectrum",
]

MAX_GRID_POINTS = 2**24
MAX_TENSOR_ENTRIES = 2**25
MAX_GRAD_ORDER = 6


@dataclass(frozen=True)
class GridSpec:
    d: int
    N: int
    L: float

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(f"dimension must be >= 1, got {self.d}")
        if self.N < 2 or self.N & (self.N - 1):
            raise DomainError(f"N must be a power of two >= 2, got {self.N}")
        if not self.L > 0:
            raise DomainError(f"box length must be positive, got {self.L}")
        if self.N**self.d > MAX_GRID_POINTS:
            raise TensorCapError(f"N**d = {self.N}**{self.d} exceeds {MAX_GRID_POINTS} points")

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.d

    @property
    def dx(self) -> float:
        return self.L / self.N

    @property
    def cell(self) -> float:
        """Physical quadrature weight ``(L/N)^d``."""
        return self.dx**self.d

    @property
    def kcell(self) -> float:
        """Fourier quadrature weight ``(2 pi / L)^d``."""
        return (2 * math.pi / self.L) ** self.d

    @cached_property
    def axis(self) -> np.ndarray:
        return -self.L / 2 + self.dx * np.arange(self.N)

    @cached_property
    def kaxis(self) -> np.ndarray:
        return 2 * math.pi * np.fft.fftfreq(self.N, d=self.dx)

    @cached_property
    def points(self) -> np.ndarray:
        """Node coordinates, shape ``(d,) + (N,)*d``."""
        return np.stack(np.meshgrid(*([self.axis] * self.d), indexing="ij"))

    @cached_property
    def wavevectors(self) -> np.ndarray:
        return np.stack(np.meshgrid(*([self.kaxis] * self.d), indexing="ij"))

    @cached_property
    def k2(self) -> np.ndarray:
        return np.sum(self.wavevectors**2, axis=0)

    @cached_property
    def _phase(self) -> np.ndarray:
        # exp(-i k x_0) with x_0 = -L/2 gives (-1)^m per axis
        sign = _alt_sign(self.N)
        out = np.ones(self.shape)
        for i in range(self.d):
            shape = [1] * self.d
            shape[i] = self.N
            out = out * sign.reshape(shape)
        return out

    def doubled(self) -> "GridSpec":
        """Refinement step: twice the box and twice the points (same spacing halved in k)."""
        return GridSpec(self.d, 2 * self.N, 2 * self.L)

    def to_dict(self) -> dict:
        return {"d": self.d, "N": self.N, "L": self.L}


def _alt_sign(N: int) -> np.ndarray:
    m = np.rint(np.fft.fftfreq(N, d=1.0 / N)).astype(int)
    return np.where(m % 2 == 0, 1.0, -1.0)


class GridField:
    """Samples of a scalar field on a :class:`GridSpec`; immutable."""

    __slots__ = ("spec", "values", "__dict__")

    def __init__(self, spec: GridSpec, values: np.ndarray):
        values = np.asarray(values)
        if values.shape != spec.shape:
            raise ValueError(f"values shape {values.shape} does not match grid {spec.shape}")
        values = values.copy()
        values.setflags(write=False)
        self.spec = spec
        self.values = values

    @cached_property
    def spectrum(self) -> np.ndarray:
        """Samples of the continuum transform on the wavenumber lattice."""
        s = self.spec
        F = np.fft.fftn(self.values) * s._phase * (s.cell / (2 * math.pi) ** (s.d / 2))
        F.setflags(write=False)
        return F

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values)

    def conj(self) -> "GridField":
        return GridField(self.spec, np.conj(self.values))

    def __add__(self, other: "GridField") -> "GridField":
        return GridField(self.spec, self.values + other.values)

    def __sub__(self, other: "GridField") -> "GridField":
        return GridField(self.spec, self.values - other.values)

    def __mul__(self, c) -> "GridField":
        return GridField(self.spec, self.values * c)

    __rmul__ = __mul__


def from_spectrum(spec: GridSpec, F: np.ndarray, real: bool = False) -> GridField:
    """Inverse of :attr:`GridField.spectrum`."""
    vals = np.fft.ifftn(np.asarray(F) * spec._phase) * ((2 * math.pi) ** (spec.d / 2) / spec.cell)
    if real:
        vals = vals.real
    return GridField(spec, vals)


class TensorField:
    """Order-``m`` tensor field: array of shape ``(d,)*m + (N,)*d``."""

    __slots__ = ("spec", "order", "components")

    def __init__(self, spec: GridSpec, order: int, components: np.ndarray):
        components = np.asarray(components)
        expect = (spec.d,) * order + spec.shape
        if components.shape != expect:
            raise ValueError(f"components shape {components.shape}, expected {expect}")
        self.spec = spec
        self.order = order
        self.components = components

    def pointwise_norm(self) -> np.ndarray:
        c = self.components
        if self.order == 0:
            return np.abs(c)
        return np.sqrt(np.sum(np.abs(c) ** 2, axis=tuple(range(self.order))))

    def conj(self) -> "TensorField":
        return TensorField(self.spec, self.order, np.conj(self.components))

    def component(self, idx: Sequence[int]) -> np.ndarray:
        return self.components[tuple(idx)]


def _check_tensor(spec: GridSpec, m: int) -> None:
    if m > MAX_GRAD_ORDER:
        raise TensorCapError(f"derivative order capped at {MAX_GRAD_ORDER}, got {m}")
    if spec.d**m * spec.N**spec.d > MAX_TENSOR_ENTRIES:
        raise TensorCapError(
            f"order-{m} tensor field on {spec.N}^{spec.d} grid exceeds {MAX_TENSOR_ENTRIES} entries"
        )


def _partial(f: GridField, counts: Sequence[int]) -> np.ndarray:
    """``d^alpha f`` for the multi-index with per-axis ``counts``."""
    s = f.spec
    mult = np.ones(s.shape, dtype=complex)
    for i, c in enumerate(counts):
        if c:
            mult = mult * (1j * s.wavevectors[i]) ** c
    return np.fft.ifftn(mult * np.fft.fftn(f.values))


def grad_m(f: GridField, m: int) -> TensorField:
    """All ``m``-th partials via the multiplier ``(i k)^(x) m``; ``m = 0`` gives ``f``."""
    if m < 0:
        raise DomainError(f"derivative order must be >= 0, got {m}")
    s = f.spec
    if m == 0:
        return TensorField(s, 0, f.values)
    _check_tensor(s, m)
    out = np.empty((s.d,) * m + s.shape, dtype=complex)
    # partials commute: one transform per multiset, copied to every ordering
    for ms in itertools.combinations_with_replacement(range(s.d), m):
        comp = _partial(f, np.bincount(ms, minlength=s.d))
        for idx in set(itertools.permutations(ms)):
            out[idx] = comp
    return TensorField(s, m, out)


def grad_norm(f: GridField, m: int) -> float:
    """``||grad^m f||_L2`` in physical space, one partial at a time."""
    if m < 0:
        raise DomainError(f"derivative order must be >= 0, got {m}")
    s = f.spec
    if m == 0:
        return math.sqrt(s.cell * float(np.sum(np.abs(f.values) ** 2)))
    total = 0.0
    for ms in itertools.combinations_with_replacement(range(s.d), m):
        counts = np.bincount(ms, minlength=s.d)
        mult = math.factorial(m) // math.prod(math.factorial(int(c)) for c in counts)
        total += mult * float(np.sum(np.abs(_partial(f, counts)) ** 2))
    return math.sqrt(s.cell * total)


def sobolev_norm_fourier(f: GridField, n: float) -> float:
    s = f.spec
    w = (1.0 + s.k2) ** n
    return math.sqrt(s.kcell * float(np.sum(w * np.abs(f.spectrum) ** 2)))


def sobolev_norm_binomial(f: GridField, n: int) -> float:
    """``sqrt(sum_m binom(n, m) ||grad^m f||^2)`` for integer ``n``."""
    if n < 0 or int(n) != n:
        raise DomainError(f"binomial route needs a nonnegative integer order, got {n}")
    return math.sqrt(sum(math.comb(n, m) * grad_norm(f, m) ** 2 for m in range(n + 1)))


def sobolev_norm(f: GridField, n: float) -> float:
    if n < 0:
        raise DomainError(f"Sobolev order must be >= 0, got {n}")
    return sobolev_norm_fourier(f, n)


def lp_norm(T, p: float) -> float:
    """``L^p`` norm of the pointwise tensor norm; ``p = inf`` is the grid maximum."""
    if isinstance(T, GridField):
        T = TensorField(T.spec, 0, T.values)
    if not p >= 1:
        raise DomainError(f"L^p needs p >= 1, got {p}")
    a = T.pointwise_norm()
    if math.isinf(p):
        return float(np.max(a))
    if p == 2:
        return math.sqrt(T.spec.cell * float(np.sum(a * a)))
    # scale out the maximum to keep large p finite
    top = float(np.max(a))
    if top == 0:
        return 0.0
    return top * (T.spec.cell * float(np.sum((a / top) ** p))) ** (1.0 / p)


def compose(model: GModel, f: GridField) -> GridField:
    """Pointwise ``G(f(x), x)``."""
    top = float(np.max(np.abs(f.values)))
    if top >= model.radius:
        raise DomainError(
            f"grid maximum |f| = {top!r} is not below the model radius r = {model.radius!r}"
        )
    x = f.spec.points if not model.x_independent else None
    return GridField(f.spec, model.evaluate(f.values, x))


# ---------------------------------------------------------------------------
# Field families
# ---------------------------------------------------------------------------


def _center(spec: GridSpec, center: Optional[Sequence[float]]) -> np.ndarray:
    c = np.zeros(spec.d) if center is None else np.asarray(center, dtype=float)
    if c.shape != (spec.d,):
        raise DomainError(f"center needs {spec.d} coordinates, got {list(c)}")
    return c


def gaussian(spec: GridSpec, amplitude: float = 1.0, center=None, width: float = 1.0) -> GridField:
    c = _center(spec, center)
    r2 = sum((spec.points[i] - c[i]) ** 2 for i in range(spec.d))
    return GridField(spec, amplitude * np.exp(-0.5 * r2 / width**2))


def modulated_gaussian(
    spec: GridSpec, amplitude: complex = 1.0, wavevector=None, center=None, width: float = 1.0
) -> GridField:
    """``A exp(i k0.x) exp(-|x - c|^2 / 2 w^2)``, a genuinely complex test field."""
    k0 = np.ones(spec.d) if wavevector is None else np.asarray(wavevector, dtype=float)
    g = gaussian(spec, 1.0, center, width).values
    phase = np.exp(1j * sum(k0[i] * spec.points[i] for i in range(spec.d)))
    return GridField(spec, amplitude * phase * g)


def bessel_kernel(spec: GridSpec, power: float, amplitude: float = 1.0) -> GridField:
    """Field whose transform is ``amplitude (1 + |k|^2)^(-power)``."""
    F = amplitude * (1.0 + spec.k2) ** (-power)
    return from_spectrum(spec, F, real=True)


def plane_wave(spec: GridSpec, modes: Sequence[int], amplitude: complex = 1.0) -> GridField:
    """``A exp(i k.x)`` for lattice wavenumber ``k = 2 pi modes / L``."""
    k = 2 * math.pi * np.asarray(modes, dtype=float) / spec.L
    phase = sum(k[i] * spec.points[i] for i in range(spec.d))
    return GridField(spec, amplitude * np.exp(1j * phase))
