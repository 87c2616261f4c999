"""Scenario files (TOML or JSON) driving the ``bound`` and ``verify`` commands.

A scenario names a model, a grid, a test field, the Sobolev orders ``(n, a)``
and a list of checks.  Checks are either bare names (default parameters) or
tables ``{name = "gagliardo", l = 1, m = 3}``.  ``lhs_scale`` multiplies every
left-hand side before judging; values above 1 give a deliberate negative control.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .errors import DomainError
from .gmodel import GModel, model_from_dict
from .spectral.grid import GridField, GridSpec, bessel_kernel, gaussian, modulated_gaussian
from .spectral.verify import (
    DEFAULT_TOLERANCE,
    CertRecord,
    default_grid,
    verify_adams_frazier,
    verify_embedding,
    verify_faadibruno,
    verify_gagliardo,
    verify_interpolation,
    verify_tame,
)

__all__ = [
    "ScenarioError",
    "UnknownCheck",
    "Scenario",
    "load_scenario",
    "parse_scenario",
    "build_field",
    "expand_checks",
    "run_checks",
    "CHECKS",
    "thread_count",
]


class ScenarioError(ValueError):
    """Malformed scenario file."""


class UnknownCheck(ScenarioError):
    pass


@dataclass(frozen=True)
class Scenario:
    model: GModel
    grid: GridSpec
    field_spec: dict
    n: int
    a: int
    checks: tuple = ()
    tolerance: float = DEFAULT_TOLERANCE
    norms: Optional[dict] = None
    lhs_scale: float = 1.0
    source: dict = field(default_factory=dict)


def load_scenario(path: str | os.PathLike) -> Scenario:
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise ScenarioError(f"cannot read {p}: {exc}") from None
    try:
        if p.suffix.lower() == ".json":
            data = json.loads(raw)
        else:
            data = tomllib.loads(raw.decode("utf-8"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise ScenarioError(f"{p}: {exc}") from None
    return parse_scenario(data)


def _block(data: dict, key: str, required: bool = True) -> dict:
    b = data.get(key)
    if b is None:
        if required:
            raise ScenarioError(f"missing [{key}] block")
        return {}
    if not isinstance(b, dict):
        raise ScenarioError(f"[{key}] must be a table")
    return b


def parse_scenario(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a table")
    try:
        model = model_from_dict(_block(data, "model"))
        bound = _block(data, "bound")
        grid_b = _block(data, "grid", required=False)
        n = int(bound.get("n", 0))
        d = int(grid_b.get("d", bound.get("d", 1)))
        a = int(bound.get("a", d // 2 + 1))
        if n < 0:
            raise ScenarioError(f"n must be >= 0, got {n}")
        if not 2 * a > d:
            raise ScenarioError(f"need a > d/2, got a={a}, d={d}")
        if d <= 3:
            base = default_grid(d)
            grid = GridSpec(d, int(grid_b.get("N", base.N)), float(grid_b.get("L", base.L)))
        else:
            grid = GridSpec(d, int(grid_b["N"]), float(grid_b["L"]))
        tol = float(data.get("tolerance", DEFAULT_TOLERANCE))
        if not tol > 0:
            raise ScenarioError(f"tolerance must be positive, got {tol}")
        checks = data.get("checks", [])
        if not isinstance(checks, list):
            raise ScenarioError("checks must be a list")
        norms = data.get("norms")
        if norms is not None and not isinstance(norms, dict):
            raise ScenarioError("[norms] must be a table")
        return Scenario(
            model=model,
            grid=grid,
            field_spec=dict(_block(data, "field", required=False)),
            n=n,
            a=a,
            checks=tuple(checks),
            tolerance=tol,
            norms=norms,
            lhs_scale=float(data.get("lhs_scale", 1.0)),
            source=data,
        )
    except ScenarioError:
        raise
    except (DomainError, TypeError, ValueError, KeyError) as exc:
        raise ScenarioError(str(exc)) from None


def build_field(sc: Scenario) -> GridField:
    spec = dict(sc.field_spec) or {"family": "gaussian"}
    family = spec.pop("family", "gaussian")
    amp = spec.pop("amplitude", 1.0)
    if isinstance(amp, list):
        amp = complex(*amp)
    try:
        if family == "gaussian":
            return gaussian(sc.grid, amp, spec.get("center"), spec.get("width", 1.0))
        if family == "modulated_gaussian":
            return modulated_gaussian(
                sc.grid, amp, spec.get("wavevector"), spec.get("center"), spec.get("width", 1.0)
            )
        if family == "bessel_kernel":
            return bessel_kernel(sc.grid, spec.get("power", sc.a), amp)
    except TypeError as exc:
        raise ScenarioError(f"bad field parameters: {exc}") from None
    raise ScenarioError(f"unknown field family {family!r}")


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

Runner = Callable[[Scenario, GridField, dict, bool], CertRecord]


def _tame(sc, f, p, freeze_u):
    return verify_tame(sc.model, f, int(p.get("n", sc.n)), int(p.get("a", sc.a)), sc.tolerance, freeze_u)


def _embedding(sc, f, p, freeze_u):
    return verify_embedding(f, int(p.get("a", sc.a)), sc.tolerance)


def _interpolation(sc, f, p, freeze_u):
    return verify_interpolation(f, int(p.get("l", 1)), int(p.get("m", 2)), sc.tolerance)


def _gagliardo(sc, f, p, freeze_u):
    return verify_gagliardo(f, int(p.get("l", 1)), int(p.get("m", 2)), int(p.get("a", sc.a)), sc.tolerance)


def _adams_frazier(sc, f, p, freeze_u):
    return verify_adams_frazier(
        f, p.get("orders", [1, 1]), p.get("conj_orders", []), int(p.get("a", sc.a)), sc.tolerance
    )


def _faadibruno(sc, f, p, freeze_u):
    return verify_faadibruno(sc.model, f, int(p.get("m", 2)), float(p.get("tolerance", 1e-8)))


CHECKS: dict[str, Runner] = {
    "tame": _tame,
    "embedding": _embedding,
    "interpolation": _interpolation,
    "gagliardo": _gagliardo,
    "adams_frazier": _adams_frazier,
    "faadibruno": _faadibruno,
}

_AF_BATTERY = [([1], []), ([1, 1], []), ([1], [1]), ([1], [2]), ([2, 2], []), ([1, 1, 1], []), ([2], [1, 1])]


def _battery(sc: Scenario) -> list[tuple[str, dict]]:
    out: list[tuple[str, dict]] = [("embedding", {})]
    for m in range(5):
        for l in range(m + 1):
            out.append(("interpolation", {"l": l, "m": m}))
            out.append(("gagliardo", {"l": l, "m": m}))
    for orders, conj in _AF_BATTERY:
        out.append(("adams_frazier", {"orders": orders, "conj_orders": conj}))
    for n in range(sc.n + 1):
        out.append(("tame", {"n": n}))
    return out


def expand_checks(sc: Scenario) -> list[tuple[str, dict]]:
    out = []
    for item in sc.checks:
        if isinstance(item, str):
            name, params = item, {}
        elif isinstance(item, dict) and "name" in item:
            params = {k: v for k, v in item.items() if k != "name"}
            name = item["name"]
        else:
            raise ScenarioError(f"malformed check entry {item!r}")
        if name == "battery":
            out.extend(_battery(sc))
            continue
        if name not in CHECKS:
            raise UnknownCheck(f"unknown check {name!r}; expected one of {sorted(CHECKS) + ['battery']}")
        out.append((name, params))
    return out


def thread_count() -> int:
    raw = os.environ.get("TAMECALC_THREADS")
    if raw is None:
        return min(4, os.cpu_count() or 1)
    try:
        return max(1, int(raw))
    except ValueError:
        raise ScenarioError(f"TAMECALC_THREADS must be an integer, got {raw!r}") from None


def run_checks(sc: Scenario, freeze_u: bool = False, threads: Optional[int] = None) -> list[CertRecord]:
    """Run every check; results come back in scenario order regardless of scheduling."""
    plan = expand_checks(sc)
    f = build_field(sc)

    def one(item):
        name, params = item
        rec = CHECKS[name](sc, f, params, freeze_u)
        return rec.scaled(sc.lhs_scale) if sc.lhs_scale != 1.0 else rec

    workers = threads or thread_count()
    if workers <= 1 or len(plan) <= 1:
        return [one(item) for item in plan]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, plan))
