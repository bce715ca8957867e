"""Command line: verify, reconstruct, pipeline, solve, polygon.

Exit codes: 0 all checks pass, 2 a check failed, 3 parse or usage error,
4 solver budget exhausted.  Every command prints one JSON report on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import grading, render, reports
from .jacobian import EdpolInstance, check_conditions, edpol_residual, reconstruct
from .laurent import LaurentPoly
from .params import ParamPoly
from .pipeline import PipelineError, run_pipeline, trace_dict
from .textio import ParseError, format_param, format_poly, parse_poly

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_BUDGET = 0, 2, 3, 4
BUDGET_ENV = "ABELJAC_BUDGET_SECS"
CONDITION_NAMES = ("A(0) mismatch", "A'(0) mismatch", "A''(0) mismatch")


class UsageError(Exception):
    pass


@dataclass
class SolveConfig:
    degree: int
    budget_secs: float = 300.0
    max_pairs: int | None = None
    mu1_zero: bool = False
    mu2_zero: bool = False


def _read_poly(path: str) -> LaurentPoly:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return parse_poly(text)


def parse_mu(text: str) -> tuple[ParamPoly, ...]:
    parts = [s for s in text.split(",")]
    if len(parts) != 4:
        raise UsageError("--mu needs four comma-separated values m0,m1,m2,m3")
    out = []
    for s in parts:
        p = parse_poly(s)
        if not p.is_constant():
            raise UsageError(f"mu entry {s!r} must not contain x or y")
        out.append(p.coeff(0, 0))
    return tuple(out)


def _edpol_inputs(args) -> tuple[EdpolInstance, dict]:
    A, q1 = _read_poly(args.A), _read_poly(args.q1)
    mu = parse_mu(args.mu)
    inputs = {"A": format_poly(A), "q1": format_poly(q1), "mu": [format_param(m) for m in mu]}
    return EdpolInstance(A, q1, mu), inputs


def cmd_verify(args) -> tuple[dict, int]:
    t0 = time.monotonic()
    e, inputs = _edpol_inputs(args)
    res = edpol_residual(e)
    cond = check_conditions(e)
    checks = [{"name": "edpol residual = 0", "passed": res.is_zero(), "actual": format_poly(res)}]
    checks += [{"name": n, "passed": ok} for n, ok in zip(("A(0) = -mu3^2/4", "A'(0) = mu2",
                                                          "mu3 A''(0) = -6 mu1 - 2 mu3 q1''(0)"), cond)]
    outputs = {"residual": format_poly(res), "conditions": list(cond),
               "condition_flags": [n for n, ok in zip(CONDITION_NAMES, cond) if not ok]}
    code = EXIT_OK if res.is_zero() else EXIT_CHECK
    return reports.run_report("verify", inputs, outputs, checks,
                              {"total": time.monotonic() - t0},
                              "ok" if code == EXIT_OK else "check-failed"), code


def cmd_reconstruct(args) -> tuple[dict, int]:
    t0 = time.monotonic()
    e, inputs = _edpol_inputs(args)
    r = reconstruct(e)
    outputs = {"P": format_poly(r.P), "Q": format_poly(r.Q), "bracket": format_poly(r.bracket),
               "polynomial": r.flags, "in_L": r.P.is_polynomial() and r.Q.is_polynomial()}
    checks = [{"name": f"{k} polynomial in y", "passed": v} for k, v in r.flags.items()]
    return reports.run_report("reconstruct", inputs, outputs, checks,
                              {"total": time.monotonic() - t0}, "ok"), EXIT_OK


def cmd_pipeline(args) -> tuple[dict, int]:
    t0 = time.monotonic()
    P, Q = _read_poly(args.P), _read_poly(args.Q)
    mu = parse_mu(args.mu)
    inputs = {"P": format_poly(P), "Q": format_poly(Q), "mu": [format_param(m) for m in mu], "j": args.j}
    try:
        state = run_pipeline(P, Q, mu, args.j, strict=not args.keep_going)
    except PipelineError as exc:
        state = exc.state
        error = str(exc)
    else:
        error = None
    trace = trace_dict(state, with_polys=args.trace is not None) if state is not None else {}
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace, indent=2, default=str))
    if args.svg and state is not None:
        out = Path(args.svg)
        out.mkdir(parents=True, exist_ok=True)
        for s in state.stages:
            for name, f in (("P", s.P), ("Q", s.Q)):
                if f.is_laurent() and not f.num.is_zero():
                    doc = render.svg(grading.polygon(f.num), f"{name}{s.index}")
                    (out / f"{name}{s.index}.svg").write_text(doc)
    checks = []
    if state is not None:
        for s in state.stages:
            checks += [{"name": f"stage {s.index} {c.name}", "passed": c.passed,
                        "expected": c.expected, "actual": c.actual} for c in s.checks]
    outputs = {"final": state.final if state is not None else None}
    if error:
        outputs["error"] = {"kind": "pipeline", "message": error}
    ok = state is not None and state.final is not None and all(c["passed"] for c in checks)
    code = EXIT_OK if ok else EXIT_CHECK
    return reports.run_report("pipeline", inputs, outputs, checks, {"total": time.monotonic() - t0},
                              "ok" if ok else "check-failed"), code


def solve_config(args) -> SolveConfig:
    budget = args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            budget = float(env)
        except ValueError as exc:
            raise UsageError(f"{BUDGET_ENV} must be a number") from exc
    for name in ("mu1", "mu2"):
        v = getattr(args, name)
        if v is not None and Fraction(v) != 0:
            raise UsageError(f"--{name} only supports the value 0")
    return SolveConfig(args.deg, budget, args.max_pairs, args.mu1 is not None, args.mu2 is not None)


def cmd_solve(args) -> tuple[dict, int]:
    from .groebner import Budget
    from .solver import generate_system, solve_system
    cfg = solve_config(args)
    if cfg.degree < 2:
        raise UsageError("--deg must be at least 2")
    t0 = time.monotonic()
    cs = generate_system(cfg.degree)
    fixed = {}
    if cfg.mu1_zero:
        fixed["mu1"] = 0
    if cfg.mu2_zero:
        fixed["mu2"] = 0
    if fixed:
        cs = cs.restricted(**fixed)
    rep = solve_system(cs, Budget(cfg.budget_secs, cfg.max_pairs))
    checks = [{"name": f"solution {k} re-verifies", "passed": s.verified}
              for k, s in enumerate(rep.solutions)]
    status = "ok"
    code = EXIT_OK
    if rep.status == "budget-exhausted":
        status, code = "budget-exhausted", EXIT_BUDGET
    elif not all(c["passed"] for c in checks):
        status, code = "check-failed", EXIT_CHECK
    inputs = {"deg": cfg.degree, "fixed": {k: str(v) for k, v in fixed.items()},
              "budget_secs": cfg.budget_secs}
    return reports.run_report("solve", inputs, {"report": rep.to_dict()}, checks,
                              {"total": time.monotonic() - t0}, status), code


def cmd_polygon(args) -> tuple[dict, int]:
    p = _read_poly(args.poly)
    if p.is_zero():
        raise UsageError("the zero polynomial has no Newton polygon")
    rec = grading.polygon(p)
    doc = render.svg(rec) if args.format == "svg" else render.ascii_art(rec)
    if args.out:
        Path(args.out).write_text(doc)
    outputs = {"polygon": rec.to_dict(), "dir": [str(e.direction) for e in rec.edges]}
    if not args.out:
        outputs["rendering"] = doc
    return reports.run_report("polygon", {"poly": format_poly(p), "format": args.format}, outputs,
                              [], {}, "ok"), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="abeljac", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn in (("verify", cmd_verify), ("reconstruct", cmd_reconstruct)):
        sp = sub.add_parser(name)
        sp.add_argument("--A", required=True, help="file holding A(y)")
        sp.add_argument("--q1", required=True, help="file holding q1(y)")
        sp.add_argument("--mu", required=True, help="m0,m1,m2,m3")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("pipeline")
    sp.add_argument("--P", required=True)
    sp.add_argument("--Q", required=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--trace", help="write the stage trace as JSON")
    sp.add_argument("--svg", help="directory for per-stage polygon SVGs")
    sp.add_argument("--keep-going", action="store_true", help="record failing checks instead of stopping")
    sp.set_defaults(func=cmd_pipeline)

    sp = sub.add_parser("solve")
    sp.add_argument("--deg", type=int, required=True)
    sp.add_argument("--mu1", help="restrict mu1 (only 0)")
    sp.add_argument("--mu2", help="restrict mu2 (only 0)")
    sp.add_argument("--budget", type=float, default=300.0, help="seconds")
    sp.add_argument("--max-pairs", type=int, default=None)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("polygon")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--format", choices=("svg", "ascii"), default="ascii")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_polygon)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        rep, code = args.func(args)
    except ParseError as exc:
        rep, code = reports.error_report(args.command, "parse", str(exc)), EXIT_USAGE
    except UsageError as exc:
        rep, code = reports.error_report(args.command, "usage", str(exc)), EXIT_USAGE
    print(reports.dumps(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
