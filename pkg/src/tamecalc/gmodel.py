"""Composition functions ``G(u, x)`` with analytically controlled suprema.

Each model exposes ``flat(m, rho, d)`` (the difference-quotient supremum),
``sigma_hkl`` / ``sigma_jl`` (suprema of mixed partials over the closed disc
of radius ``rho``), pointwise evaluation and exact partial derivatives.

Holomorphic kinds (``sinh``, monomials/polynomials in ``u``, ``u psi(x)``)
have ``dbar G = 0``; their suprema over the complex disc coincide with the
real-interval ones because all Taylor coefficients in ``u`` are handled by
modulus, so they are usable for real and complex fields alike.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Mapping, Sequence

import numpy as np
from numpy.polynomial import hermite_e
from scipy.optimize import minimize_scalar

from .errors import DomainError

__all__ = [
    "GModel",
    "RealMonomial",
    "ComplexMonomial",
    "Sinh",
    "RealPolynomial",
    "SeparableLinear",
    "model_from_dict",
    "flat_m",
    "sigma_jl",
    "evaluate",
    "partial_derivative",
    "gaussian_derivative_tensor",
    "gaussian_derivative_sup",
]


def _falling(n: int, k: int) -> int:
    """``n! / (n - k)!``, zero when ``k > n``."""
    if k > n:
        return 0
    return math.perm(n, k)


@dataclass(frozen=True, kw_only=True)
class GModel:
    radius: float = math.inf

    kind = "abstract"
    x_independent = True

    # -- domain checks --------------------------------------------------
    def check_rho(self, rho: float) -> None:
        if rho < 0:
            raise DomainError(f"rho must be nonnegative, got {rho}")
        if rho >= self.radius:
            raise DomainError(f"rho = {rho} is not below the model radius r = {self.radius}")

    def check_values(self, values) -> None:
        vmax = float(np.max(np.abs(values))) if np.size(values) else 0.0
        if vmax >= self.radius:
            raise DomainError(
                f"max |f| = {vmax!r} is not below the model radius r = {self.radius}"
            )

    # -- suprema ----------------------------------------------------------
    def flat(self, m: int, rho: float, d: int = 1) -> float:
        raise NotImplementedError

    def sigma_hkl(self, h: int, k: int, l: int, rho: float, d: int = 1) -> float:
        """Holomorphic default: ``dbar`` derivatives vanish."""
        self.check_rho(rho)
        if k > 0:
            return 0.0
        return self._sigma_holo(h, l, rho, d)

    def _sigma_holo(self, j: int, l: int, rho: float, d: int) -> float:
        raise NotImplementedError

    def sigma_jl(self, j: int, l: int, rho: float, d: int = 1) -> float:
        """``sum_h binom(j, h) sigma[h, j-h, l]``."""
        if j < 1 or l < 0:
            raise DomainError(f"sigma needs j >= 1, l >= 0, got j={j}, l={l}")
        return float(sum(math.comb(j, h) * self.sigma_hkl(h, j - h, l, rho, d) for h in range(j + 1)))

    # -- pointwise ----------------------------------------------------------
    def evaluate(self, value, x=None):
        raise NotImplementedError

    def partial_derivative(self, h: int, k: int, value, x=None):
        """``d^h dbar^k G`` at ``(value, x)`` (no ``x``-derivatives)."""
        return self.partial_tensor(h, k, 0, value, x)

    def partial_tensor(self, h: int, k: int, l: int, value, x=None, d: int = 1):
        """``d^h dbar^k grad^l G`` at ``(value(x), x)``; shape ``(d,)*l + value.shape``."""
        value = np.asarray(value)
        if l == 0:
            return self._partial_scalar(h, k, value, x)
        # x-independent kinds: every x-derivative vanishes
        return np.zeros((d,) * l + value.shape, dtype=complex)

    def _partial_scalar(self, h: int, k: int, value, x):
        raise NotImplementedError

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        if math.isfinite(self.radius):
            out["radius"] = self.radius
        return out


@dataclass(frozen=True, kw_only=True)
class RealMonomial(GModel):
    """``G(u) = u**J``."""

    J: int = 1
    kind = "real_monomial"

    def __post_init__(self):
        if self.J < 1:
            raise DomainError(f"exponent J must be >= 1, got {self.J}")

    def flat(self, m, rho, d=1):
        self.check_rho(rho)
        if m >= 1:
            return 0.0
        return float(rho ** (self.J - 1))

    def _sigma_holo(self, j, l, rho, d):
        if l > 0:
            return 0.0
        return float(_falling(self.J, j) * rho ** max(self.J - j, 0)) if j <= self.J else 0.0

    def evaluate(self, value, x=None):
        return np.asarray(value) ** self.J

    def _partial_scalar(self, h, k, value, x):
        if k > 0 or h > self.J:
            return np.zeros_like(value, dtype=complex)
        return _falling(self.J, h) * value ** (self.J - h)

    def to_dict(self):
        return {**super().to_dict(), "J": self.J}


@dataclass(frozen=True, kw_only=True)
class ComplexMonomial(GModel):
    """``G(z) = z**H * conj(z)**K``."""

    H: int = 1
    K: int = 0
    kind = "complex_monomial"

    def __post_init__(self):
        if self.H < 0 or self.K < 0 or self.H + self.K == 0:
            raise DomainError(f"need H, K >= 0 and H + K >= 1, got H={self.H}, K={self.K}")

    @property
    def J(self) -> int:
        return self.H + self.K

    def flat(self, m, rho, d=1):
        self.check_rho(rho)
        if m >= 1:
            return 0.0
        return float(rho ** (self.J - 1))

    def sigma_hkl(self, h, k, l, rho, d=1):
        self.check_rho(rho)
        if l > 0 or h > self.H or k > self.K:
            return 0.0
        c = _falling(self.H, h) * _falling(self.K, k)
        return float(c * rho ** (self.J - h - k))

    def sigma_j0_exact(self, j: int) -> int:
        """Integer ``sum_h binom(j, h) H!K!/((H-h)!(K-j+h)!)`` (the value at rho = 1)."""
        return sum(
            math.comb(j, h) * _falling(self.H, h) * _falling(self.K, j - h)
            for h in range(j + 1)
            if j - h >= 0
        )

    def sigma_jl(self, j, l, rho, d=1):
        if j < 1 or l < 0:
            raise DomainError(f"sigma needs j >= 1, l >= 0, got j={j}, l={l}")
        self.check_rho(rho)
        if l > 0 or j > self.J:
            return 0.0
        return float(self.sigma_j0_exact(j) * rho ** (self.J - j))

    def evaluate(self, value, x=None):
        z = np.asarray(value)
        return z**self.H * np.conj(z) ** self.K

    def _partial_scalar(self, h, k, value, x):
        z = np.asarray(value)
        if h > self.H or k > self.K:
            return np.zeros_like(z, dtype=complex)
        c = _falling(self.H, h) * _falling(self.K, k)
        return c * z ** (self.H - h) * np.conj(z) ** (self.K - k)

    def to_dict(self):
        return {**super().to_dict(), "H": self.H, "K": self.K}


@dataclass(frozen=True, kw_only=True)
class Sinh(GModel):
    kind = "sinh"

    def flat(self, m, rho, d=1):
        self.check_rho(rho)
        if m >= 1:
            return 0.0
        return 1.0 if rho == 0 else math.sinh(rho) / rho

    def _sigma_holo(self, j, l, rho, d):
        if l > 0:
            return 0.0
        return math.cosh(rho) if j % 2 else math.sinh(rho)

    def evaluate(self, value, x=None):
        return np.sinh(np.asarray(value))

    def _partial_scalar(self, h, k, value, x):
        z = np.asarray(value)
        if k > 0:
            return np.zeros_like(z, dtype=complex)
        return np.cosh(z) if h % 2 else np.sinh(z)


@dataclass(frozen=True, kw_only=True)
class RealPolynomial(GModel):
    """``G(u) = sum_i c_i u**i``.  Suprema are triangle-inequality bounds
    (exact for nonnegative coefficients, otherwise possibly loose)."""

    coeffs: tuple[float, ...] = (0.0, 1.0)
    kind = "real_polynomial"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if len(self.coeffs) < 2:
            raise DomainError("polynomial needs at least a linear coefficient slot")

    def flat(self, m, rho, d=1):
        self.check_rho(rho)
        if m >= 1:
            return 0.0
        return float(sum(abs(c) * rho ** (i - 1) for i, c in enumerate(self.coeffs) if i >= 1))

    def _sigma_holo(self, j, l, rho, d):
        if l > 0:
            return 0.0
        return float(
            sum(abs(c) * _falling(i, j) * rho ** (i - j) for i, c in enumerate(self.coeffs) if i >= j)
        )

    def evaluate(self, value, x=None):
        z = np.asarray(value)
        out = np.zeros_like(z, dtype=np.result_type(z, float))
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    def _partial_scalar(self, h, k, value, x):
        z = np.asarray(value)
        if k > 0:
            return np.zeros_like(z, dtype=complex)
        out = np.zeros_like(z, dtype=np.result_type(z, float))
        for i in range(len(self.coeffs) - 1, h - 1, -1):
            out = out * z + self.coeffs[i] * _falling(i, h)
        return out

    def to_dict(self):
        return {**super().to_dict(), "coeffs": list(self.coeffs)}


# ---------------------------------------------------------------------------
# Gaussian profile psi(x) = exp(-|x|^2 / 2)
# ---------------------------------------------------------------------------

SUP_GRID_POINTS = 2**14
SUP_GRID_RMAX = 12.0


def _hermite_e(n: int, t):
    c = np.zeros(n + 1)
    c[n] = 1.0
    return hermite_e.hermeval(t, c)


def gaussian_derivative_tensor(l: int, points: np.ndarray) -> np.ndarray:
    """``grad^l psi`` at ``points`` (shape ``(d,) + batch``), shape ``(d,)*l + batch``.

    Uses ``d^n/dt^n exp(-t^2/2) = (-1)^n He_n(t) exp(-t^2/2)``.
    """
    points = np.asarray(points, dtype=float)
    d = points.shape[0]
    batch = points.shape[1:]
    psi = np.exp(-0.5 * np.sum(points**2, axis=0))
    he = [[_hermite_e(n, points[i]) for n in range(l + 1)] for i in range(d)]
    out = np.empty((d,) * l + batch, dtype=float)
    for idx in np.ndindex(*((d,) * l)):
        counts = np.bincount(np.asarray(idx, dtype=int), minlength=d) if l else np.zeros(d, int)
        val = (-1.0) ** l * psi
        for i in range(d):
            if counts[i]:
                val = val * he[i][counts[i]]
        out[idx] = val
    return out


@lru_cache(maxsize=None)
def _he_zero_sq_sums(dd: int, kmax: int) -> tuple[float, ...]:
    """``A[k] = sum over lam in {1..dd}^k of prod_i He_{n_i}(0)^2``."""
    he0 = [float(_hermite_e(n, 0.0)) ** 2 for n in range(kmax + 1)]
    # exponential generating function: A[k]/k! = coefficient of product over axes
    egf = [1.0] + [0.0] * kmax
    single = [he0[n] / math.factorial(n) for n in range(kmax + 1)]
    for _ in range(dd):
        new = [0.0] * (kmax + 1)
        for a in range(kmax + 1):
            if egf[a]:
                for b in range(kmax + 1 - a):
                    new[a + b] += egf[a] * single[b]
        egf = new
    return tuple(egf[k] * math.factorial(k) for k in range(kmax + 1))


def _radial_norm_sq(l: int, d: int, r):
    """``|grad^l psi(r e_1)|^2``; the tensor norm is rotation invariant."""
    rest = _he_zero_sq_sums(d - 1, l)
    total = 0.0
    for n1 in range(l + 1):
        if rest[l - n1]:
            total = total + math.comb(l, n1) * _hermite_e(n1, r) ** 2 * rest[l - n1]
    return total * np.exp(-np.asarray(r) ** 2)


@lru_cache(maxsize=None)
def gaussian_derivative_sup(l: int, d: int) -> float:
    """``sup_x |grad^l psi(x)|``: dense radial grid on ``[0, 12]`` followed by a
    bounded local refinement around the best grid point."""
    if l == 0:
        return 1.0
    r = np.linspace(0.0, SUP_GRID_RMAX, SUP_GRID_POINTS)
    vals = _radial_norm_sq(l, d, r)
    i = int(np.argmax(vals))
    best = float(vals[i])
    h = r[1] - r[0]
    lo, hi = max(r[i] - h, 0.0), min(r[i] + h, SUP_GRID_RMAX)
    res = minimize_scalar(
        lambda t: -float(_radial_norm_sq(l, d, t)),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-13},
    )
    best = max(best, -float(res.fun))
    return math.sqrt(best)


@dataclass(frozen=True, kw_only=True)
class SeparableLinear(GModel):
    """``G(u, x) = u * psi(x)`` with the Gaussian profile ``psi``."""

    kind = "separable_linear"
    x_independent = False

    def flat(self, m, rho, d=1):
        self.check_rho(rho)
        return gaussian_derivative_sup(m, d)

    def _sigma_holo(self, j, l, rho, d):
        if j == 1:
            return gaussian_derivative_sup(l, d)
        return 0.0

    def evaluate(self, value, x=None):
        value = np.asarray(value)
        if x is None:
            raise DomainError("separable_linear needs the point x")
        return value * gaussian_derivative_tensor(0, np.asarray(x))

    def partial_tensor(self, h, k, l, value, x=None, d=None):
        value = np.asarray(value)
        if x is None:
            raise DomainError("separable_linear needs the point x")
        x = np.asarray(x, dtype=float)
        dim = x.shape[0]
        if k > 0 or h > 1:
            return np.zeros((dim,) * l + value.shape, dtype=complex)
        tens = gaussian_derivative_tensor(l, x)
        if h == 1:
            return tens * np.ones_like(value)
        return tens * value


# ---------------------------------------------------------------------------
# Functional front door
# ---------------------------------------------------------------------------

_KINDS = {
    "real_monomial": RealMonomial,
    "complex_monomial": ComplexMonomial,
    "sinh": Sinh,
    "real_polynomial": RealPolynomial,
    "separable_linear": SeparableLinear,
}


def model_from_dict(spec: Mapping[str, Any]) -> GModel:
    """Parse ``{"kind": "complex_monomial", "H": 2, "K": 1}`` and friends."""
    spec = dict(spec)
    kind = spec.pop("kind", None)
    if kind not in _KINDS:
        raise DomainError(f"unknown model kind {kind!r}; expected one of {sorted(_KINDS)}")
    radius = spec.pop("radius", math.inf)
    if isinstance(radius, str):
        radius = float(radius)
    if not radius > 0:
        raise DomainError(f"radius must be positive, got {radius}")
    if kind == "real_polynomial" and "coeffs" in spec:
        spec["coeffs"] = tuple(spec["coeffs"])
    try:
        return _KINDS[kind](radius=radius, **spec)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {kind}: {exc}") from None


def flat_m(model: GModel, m: int, rho: float, d: int = 1) -> float:
    return model.flat(m, rho, d)


def sigma_jl(model: GModel, j: int, l: int, rho: float, d: int = 1) -> float:
    return model.sigma_jl(j, l, rho, d)


def evaluate(model: GModel, value, x=None):
    model.check_values(value)
    return model.evaluate(value, x)


def partial_derivative(model: GModel, h: int, k: int, value, x=None):
    model.check_values(value)
    return model.partial_derivative(h, k, value, x)
