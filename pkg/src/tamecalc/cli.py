"""``tamecalc`` command line: poly, constants, bound, verify.

Exit codes: 0 success; 1 a certification failed; 2 usage or parse error;
3 the field lies outside the ball where the bound applies.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from typing import Optional, Sequence

from .combinatorics import PmPolynomial, pm_polynomial
from .constants import INF, adams_frazier_U, embedding_constant, func_E, hausdorff_young_C
from .errors import BallViolation, DomainError
from .estimates import BoundReport, tame_bound
from .scenario import ScenarioError, build_field, load_scenario, run_checks
from .spectral.grid import grad_norm, sobolev_norm

POLY_MAX_ORDER = 12

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BALL = 3

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _nu_text(j: int, l: int) -> str:
    sep = "," if j >= 10 or l >= 10 else ""
    return f"ν{j}{sep}{l}"


def _nu_latex(j: int, l: int) -> str:
    sep = "," if j >= 10 or l >= 10 else ""
    return f"\\nu_{{{j}{sep}{l}}}"


def _render(poly: PmPolynomial, nu, rho) -> str:
    groups = []
    for j in range(poly.m, 0, -1):
        terms = []
        for l in range(0, poly.m - j + 1):
            c = poly[(j, l)]
            terms.append(nu(j, l) if c == 1 else f"{c} {nu(j, l)}")
        inner = terms[0] if len(terms) == 1 else "(" + " + ".join(terms) + ")"
        groups.append(f"{inner} {rho(j)}")
    return " + ".join(groups)


def render_poly(poly: PmPolynomial, fmt: str) -> str:
    if fmt == "json":
        return dumps(poly.to_json())
    if fmt == "latex":
        return _render(poly, _nu_latex, lambda j: "\\rho" if j == 1 else f"\\rho^{{{j}}}")
    return _render(poly, _nu_text, lambda j: "ρ" if j == 1 else "ρ" + str(j).translate(_SUPERSCRIPT))


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, shortest round-trip floats."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_poly(args) -> int:
    if not 1 <= args.m <= POLY_MAX_ORDER:
        raise UsageError(f"poly order must satisfy 1 <= m <= {POLY_MAX_ORDER}, got {args.m}")
    _emit(render_poly(pm_polynomial(args.m), args.format), args.output)
    return EXIT_OK


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"expected an integer, got {s!r}") from None


def _constant(which: str, params: Sequence[str]) -> float:
    need = {"S": 2, "U": 3, "C": 2, "E": 1}
    if which not in need:
        raise UsageError(f"unknown constant {which!r}; expected one of S, U, C, E")
    if len(params) != need[which]:
        raise UsageError(f"constant {which} takes {need[which]} parameters, got {len(params)}")
    if which == "S":
        return embedding_constant((_int(params[0]), _int(params[1])))
    if which == "U":
        return adams_frazier_U(*(_int(p) for p in params))
    if which == "C":
        r = INF if params[0].lower() in ("inf", "infinity") else float(params[0])
        return hausdorff_young_C(r, _int(params[1]))
    return func_E(float(params[0]))


def cmd_constants(args) -> int:
    value = _constant(args.which, args.params)
    if args.format == "json":
        _emit(dumps({"which": args.which, "params": list(args.params), "value": value}), args.output)
    else:
        _emit(repr(value), args.output)
    return EXIT_OK


def _report_dict(rep: BoundReport, weak: bool) -> dict:
    out = rep.to_dict()
    out["form"] = "weak" if weak else "full"
    out["rhs"] = rep.weak_bound if weak else rep.bound
    return out


def cmd_bound(args) -> int:
    sc = load_scenario(args.scenario)
    d = sc.grid.d
    if sc.norms is not None:
        try:
            na, nn, nl = (float(sc.norms[k]) for k in ("norm_a", "norm_n", "norm_L2"))
        except KeyError as exc:
            raise ScenarioError(f"[norms] is missing {exc}") from None
        grads = None
    else:
        f = build_field(sc)
        na, nn = sobolev_norm(f, sc.a), sobolev_norm(f, sc.n)
        grads = [grad_norm(f, m) for m in range(sc.n + 1)]
        nl = grads[0]
    rep = tame_bound(sc.model, sc.n, sc.a, d, na, nn, nl, grad_norms=grads, freeze_u=args.freeze_u)
    payload = _report_dict(rep, args.weak)
    if args.format == "json":
        _emit(dumps(payload), args.output)
    else:
        lines = [f"rho = {rep.rho!r}", f"gamma = {rep.gamma_nd!r}", f"c = {rep.c_nd!r}"]
        lines.append(f"{payload['form']} bound = {payload['rhs']!r}")
        _emit("\n".join(lines), args.output)
    return EXIT_OK


def _csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "lhs", "rhs", "ratio", "pass"])
    for top in records:
        for r in top.flatten():
            w.writerow([r.name, repr(r.lhs), repr(r.rhs), repr(r.ratio), "pass" if r.passed else "FAIL"])
    return buf.getvalue()


def cmd_verify(args) -> int:
    sc = load_scenario(args.scenario)
    if args.tolerance is not None:
        if not args.tolerance > 0:
            raise UsageError("tolerance must be positive")
        sc = replace(sc, tolerance=args.tolerance)
    records = run_checks(sc, freeze_u=args.freeze_u)
    payload = {"scenario": args.scenario, "records": [r.to_dict() for r in records]}
    summary = _csv(records)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(summary)
    if args.format == "json":
        _emit(dumps(payload), args.output)
    else:
        if args.output:
            _emit(dumps(payload), args.output)
        sys.stdout.write(summary)
    failed = [r for top in records for r in top.flatten() if not r.passed]
    if failed:
        for r in failed:
            print(f"FAILED {r.name}: lhs={r.lhs!r} rhs={r.rhs!r} ratio={r.ratio!r}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tamecalc", description="Tame composition bounds in H^n and their numerical certification.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "latex", "json")):
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--output", help="write the result to this file instead of stdout")

    sp = sub.add_parser("poly", help="print the universal polynomial P_m")
    sp.add_argument("m", type=int)
    common(sp)
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("constants", help="evaluate S a d | U m j d | C r d | E s")
    sp.add_argument("which")
    sp.add_argument("params", nargs="*")
    common(sp, ("text", "json"))
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("bound", help="tame bound for a scenario")
    sp.add_argument("scenario")
    sp.add_argument("--freeze-u", action="store_true", help="replace every U constant with 1")
    sp.add_argument("--weak", action="store_true", help="single-coefficient form (gamma + c) ||f||_n")
    common(sp, ("json", "text"))
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("verify", help="run the checks listed in a scenario")
    sp.add_argument("scenario")
    sp.add_argument("--tolerance", type=float)
    sp.add_argument("--freeze-u", action="store_true")
    sp.add_argument("--csv", help="also write the CSV summary to this file")
    common(sp, ("text", "json"))
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BallViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BALL
    except (UsageError, ScenarioError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
