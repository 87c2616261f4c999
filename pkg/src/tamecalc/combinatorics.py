"""Exact combinatorics behind the composition bounds.

Stirling numbers of the second kind, the coefficients ``P[m, j, l]`` of the
universal polynomials ``P_m`` (three independent routes), the partition index
sets used by the tensor Faa di Bruno formula and its coefficients, and Bell
polynomials.  Everything here is exact integer arithmetic; floats appear only
in :func:`pm_evaluate` and :func:`bell_polynomial_value`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .errors import DomainError

__all__ = [
    "StirlingTable",
    "PmPolynomial",
    "PartitionSeq",
    "PartitionPair",
    "stirling2",
    "pm_coeff_recursive",
    "pm_coeff_explicit",
    "pm_coeff_stirling",
    "pm_polynomial",
    "pm_evaluate",
    "enumerate_Djw",
    "enumerate_Dm",
    "enumerate_Dhkw",
    "enumerate_Dhat_m",
    "fdb_coeff_real",
    "fdb_coeff_complex",
    "check_sum_identities",
    "SumIdentityReport",
    "bell_polynomial_value",
    "bell_number",
]


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


# ---------------------------------------------------------------------------
# Stirling numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StirlingTable:
    """Triangular table ``S(j, m)`` for ``1 <= j <= m <= max_order``."""

    max_order: int
    values: Mapping[tuple[int, int], int]

    @classmethod
    def build(cls, max_order: int) -> "StirlingTable":
        _require(max_order >= 1, f"max_order must be >= 1, got {max_order}")
        vals: dict[tuple[int, int], int] = {(1, 1): 1}
        for m in range(1, max_order):
            for j in range(1, m + 2):
                vals[(j, m + 1)] = vals.get((j - 1, m), 0) + j * vals.get((j, m), 0)
        return cls(max_order, vals)

    def __call__(self, j: int, m: int) -> int:
        _require(1 <= j <= m <= self.max_order, f"(j, m) = ({j}, {m}) outside table")
        return self.values[(j, m)]


@lru_cache(maxsize=None)
def stirling2(j: int, m: int) -> int:
    """Number of partitions of an ``m``-set into ``j`` nonempty blocks."""
    _require(isinstance(j, int) and isinstance(m, int), "integer arguments required")
    _require(1 <= j <= m, f"stirling2 needs 1 <= j <= m, got j={j}, m={m}")
    if j == 1 or j == m:
        return 1
    return stirling2(j - 1, m - 1) + j * stirling2(j, m - 1)


# ---------------------------------------------------------------------------
# Coefficients of the universal polynomials
# ---------------------------------------------------------------------------


def _check_mjl(m: int, j: int, l: int) -> None:
    _require(m >= 1, f"m must be >= 1, got {m}")
    _require(1 <= j <= m, f"need 1 <= j <= m, got j={j}, m={m}")
    _require(0 <= l <= m - j, f"need 0 <= l <= m - j, got l={l} (m={m}, j={j})")


@lru_cache(maxsize=None)
def _recursive_row(m: int) -> dict[tuple[int, int], int]:
    if m == 1:
        return {(1, 0): 1}
    prev = _recursive_row(m - 1)
    row: dict[tuple[int, int], int] = {}
    mm = m - 1
    for j in range(1, m + 1):
        for l in range(0, m - j + 1):
            val = prev.get((j, l - 1), 0) + prev.get((j - 1, l), 0) + j * prev.get((j, l), 0)
            if j == 1 and l == mm:
                val += 1
            row[(j, l)] = val
    return row


def pm_coeff_recursive(m: int, j: int, l: int) -> int:
    """``P[m, j, l]`` from the three-term recursion with ``P[1,1,0] = 1``."""
    _check_mjl(m, j, l)
    return _recursive_row(m)[(j, l)]


def pm_coeff_explicit(m: int, j: int, l: int) -> int:
    """``P[m, j, l]`` from the alternating binomial sum, divided exactly by ``j!``."""
    _check_mjl(m, j, l)
    total = sum((-1) ** (j - s) * math.comb(j, s) * s ** (m - l) for s in range(j + 1))
    num = math.comb(m, l) * total
    q, rem = divmod(num, math.factorial(j))
    assert rem == 0, f"inexact division for P[{m},{j},{l}]"
    return q


def pm_coeff_stirling(m: int, j: int, l: int) -> int:
    """``P[m, j, l] = binom(m, l) * S(j, m - l)``."""
    _check_mjl(m, j, l)
    return math.comb(m, l) * stirling2(j, m - l)


@dataclass(frozen=True)
class PmPolynomial:
    """Coefficient table of ``P_m(nu, rho) = sum P[m,j,l] nu[j,l] rho**j``."""

    m: int
    coeffs: Mapping[tuple[int, int], int]

    def indices(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs)

    def __getitem__(self, jl: tuple[int, int]) -> int:
        return self.coeffs[jl]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "coeffs": [
                {"j": j, "l": l, "value": str(self.coeffs[(j, l)])} for j, l in self.indices()
            ],
        }

    @classmethod
    def from_json(cls, payload: Mapping) -> "PmPolynomial":
        coeffs = {(int(c["j"]), int(c["l"])): int(c["value"]) for c in payload["coeffs"]}
        return cls(int(payload["m"]), coeffs)


@lru_cache(maxsize=None)
def pm_polynomial(m: int) -> PmPolynomial:
    """The universal polynomial ``P_m``; every coefficient is cross-checked
    against the explicit sum and the Stirling product."""
    _require(isinstance(m, int) and m >= 1, f"P_m is defined for m >= 1, got {m}")
    row = _recursive_row(m)
    for (j, l), val in row.items():
        if val != pm_coeff_explicit(m, j, l) or val != pm_coeff_stirling(m, j, l):
            raise AssertionError(f"coefficient routes disagree at (m, j, l) = ({m}, {j}, {l})")
    return PmPolynomial(m, dict(row))


def pm_evaluate(poly: PmPolynomial, nu: Mapping[tuple[int, int], float], rho: float) -> float:
    """Evaluate ``P_m`` at nonnegative ``nu`` and ``rho``; missing ``nu`` read as 0."""
    _require(rho >= 0, f"rho must be nonnegative, got {rho}")
    total = 0.0
    for (j, l), c in poly.coeffs.items():
        v = nu.get((j, l), 0.0)
        _require(v >= 0, f"nu[{j},{l}] = {v} is negative")
        if v:
            total += float(c) * v * rho**j
    return total


# ---------------------------------------------------------------------------
# Partition index sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class PartitionSeq:
    """Finitely supported sequence ``(p_1, p_2, ...)``; trailing zeros trimmed.

    ``p_s`` counts the factors carrying an ``s``-th derivative.
    """

    entries: tuple[int, ...] = ()

    def __post_init__(self):
        ent = tuple(int(x) for x in self.entries)
        if any(x < 0 for x in ent):
            raise ValueError(f"negative entry in {ent}")
        while ent and ent[-1] == 0:
            ent = ent[:-1]
        object.__setattr__(self, "entries", ent)

    @property
    def weight(self) -> int:
        return sum((s + 1) * p for s, p in enumerate(self.entries))

    @property
    def length(self) -> int:
        return sum(self.entries)

    def __getitem__(self, s: int) -> int:
        """``p_s`` with 1-based ``s``; zero beyond the stored support."""
        if s < 1:
            raise IndexError("partition entries are 1-based")
        return self.entries[s - 1] if s <= len(self.entries) else 0

    def parts(self) -> list[int]:
        """Part sizes in nondecreasing order, e.g. ``(2, 1) -> [1, 1, 2]``."""
        return [s + 1 for s, p in enumerate(self.entries) for _ in range(p)]

    def __repr__(self) -> str:
        return f"PartitionSeq{self.entries}"


@dataclass(frozen=True, order=True)
class PartitionPair:
    p: PartitionSeq = field(default_factory=PartitionSeq)
    q: PartitionSeq = field(default_factory=PartitionSeq)

    @property
    def weight(self) -> int:
        return self.p.weight + self.q.weight

    def in_Dhkw(self, h: int, k: int, w: int) -> bool:
        return self.p.length == h and self.q.length == k and self.weight == w


def _partitions_into(j: int, w: int, max_part: int) -> Iterator[list[int]]:
    """Partitions of ``w`` into exactly ``j`` parts, each <= max_part,
    as nonincreasing lists, largest part descending."""
    if j == 0:
        if w == 0:
            yield []
        return
    # largest part t must satisfy t*j >= w and t + (j - 1) <= w
    hi = min(max_part, w - (j - 1))
    lo = -(-w // j)
    for t in range(hi, lo - 1, -1):
        for rest in _partitions_into(j - 1, w - t, t):
            yield [t] + rest


def _to_seq(parts: Sequence[int]) -> PartitionSeq:
    if not parts:
        return PartitionSeq(())
    counts = [0] * max(parts)
    for t in parts:
        counts[t - 1] += 1
    return PartitionSeq(tuple(counts))


def _djw(j: int, w: int) -> list[PartitionSeq]:
    return sorted(_to_seq(parts) for parts in _partitions_into(j, w, w))


def enumerate_Djw(j: int, w: int) -> list[PartitionSeq]:
    """All ``p`` with ``sum p_s = j`` and ``sum s p_s = w``, in lexicographic order."""
    _require(j >= 1 and w >= 1, f"need j, w >= 1, got j={j}, w={w}")
    _require(j <= w, f"D_(j,w) requires j <= w, got j={j}, w={w}")
    return _djw(j, w)


def enumerate_Dm(m: int) -> list[PartitionSeq]:
    """All ``p`` with weight in ``[1, m]``."""
    _require(m >= 1, f"m must be >= 1, got {m}")
    out: list[PartitionSeq] = []
    for w in range(1, m + 1):
        for j in range(1, w + 1):
            out.extend(_djw(j, w))
    return sorted(out)


def enumerate_Dhkw(h: int, k: int, w: int) -> list[PartitionPair]:
    """All pairs ``(p, q)`` with lengths ``h``, ``k`` and total weight ``w``."""
    _require(h >= 0 and k >= 0, f"need h, k >= 0, got h={h}, k={k}")
    _require(1 <= h + k <= w, f"need 1 <= h + k <= w, got h={h}, k={k}, w={w}")
    out = []
    for wp in range(h, w - k + 1):
        wq = w - wp
        ps = _djw(h, wp) if h else ([PartitionSeq()] if wp == 0 else [])
        qs = _djw(k, wq) if k else ([PartitionSeq()] if wq == 0 else [])
        out.extend(PartitionPair(p, q) for p in ps for q in qs)
    return sorted(out)


def enumerate_Dhat_m(m: int) -> list[PartitionPair]:
    _require(m >= 1, f"m must be >= 1, got {m}")
    out = []
    for w in range(1, m + 1):
        for hk in range(1, w + 1):
            for h in range(hk + 1):
                out.extend(enumerate_Dhkw(h, hk - h, w))
    return sorted(out)


# ---------------------------------------------------------------------------
# Faa di Bruno coefficients
# ---------------------------------------------------------------------------


def _denominator(p: PartitionSeq) -> int:
    den = 1
    for s, ps in enumerate(p.entries, start=1):
        den *= math.factorial(s) ** ps * math.factorial(ps)
    return den


def fdb_coeff_real(m: int, p: PartitionSeq) -> int:
    """Coefficient ``P[m|p] = m!/(m - w)! / prod((s!)^p_s p_s!)``."""
    w = p.weight
    _require(m >= 1 and 1 <= w <= m, f"p = {p} is not in D_{m} (weight {w})")
    num = math.factorial(m) // math.factorial(m - w)
    q, rem = divmod(num, _denominator(p))
    assert rem == 0
    return q


def fdb_coeff_complex(m: int, pair: PartitionPair) -> int:
    """Coefficient ``P[m|pq]`` of the complex expansion."""
    w = pair.weight
    _require(m >= 1 and 1 <= w <= m, f"{pair} is not in the complex index set for m={m}")
    num = math.factorial(m) // math.factorial(m - w)
    q, rem = divmod(num, _denominator(pair.p) * _denominator(pair.q))
    assert rem == 0
    return q


@dataclass
class SumIdentityReport:
    m: int
    real_checked: int = 0
    complex_checked: int = 0
    real_failures: list[tuple[int, int]] = field(default_factory=list)
    complex_failures: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.real_failures and not self.complex_failures


def check_sum_identities(m: int) -> SumIdentityReport:
    """Check that partition sums of Faa di Bruno coefficients reproduce the
    ``P[m, j, l]`` table, in the real and complex (binomial-weighted) forms."""
    _require(m >= 1, f"m must be >= 1, got {m}")
    poly = pm_polynomial(m)
    rep = SumIdentityReport(m)
    for j in range(1, m + 1):
        for l in range(0, m - j + 1):
            s = sum(fdb_coeff_real(m, p) for p in enumerate_Djw(j, m - l))
            rep.real_checked += 1
            if s != poly[(j, l)]:
                rep.real_failures.append((j, l))
            for h in range(j + 1):
                k = j - h
                s = sum(fdb_coeff_complex(m, pq) for pq in enumerate_Dhkw(h, k, m - l))
                rep.complex_checked += 1
                if s != math.comb(j, h) * poly[(j, l)]:
                    rep.complex_failures.append((h, k, l))
    return rep


# ---------------------------------------------------------------------------
# Bell polynomials
# ---------------------------------------------------------------------------


def bell_polynomial_value(w: int, t: Sequence[float]) -> float:
    """Complete Bell polynomial ``Y_w(t_1, ..., t_w)`` as a partition sum."""
    _require(w >= 1, f"w must be >= 1, got {w}")
    _require(len(t) >= w, f"need at least {w} arguments, got {len(t)}")
    total = 0
    for j in range(1, w + 1):
        for p in _djw(j, w):
            c = math.factorial(w) // _denominator(p)
            term = c
            for s, ps in enumerate(p.entries, start=1):
                if ps:
                    term = term * t[s - 1] ** ps
            total += term
    return total


def bell_number(m: int) -> int:
    return sum(stirling2(j, m) for j in range(1, m + 1))
