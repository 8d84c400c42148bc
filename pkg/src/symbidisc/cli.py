"""Command line interface: ``symbidisc solve | generate | verify | membership``.

Exit codes: 0 pass or feasible, 1 verification failure, 2 infeasible,
3 input error. JSON floats are written with Python's shortest round-trip
representation, so re-reading a file reproduces every value exactly.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis, domains, family, solver
from .errors import InputError, SymbidiscError
from .scalar import unit_circle

EXIT_OK, EXIT_FAIL, EXIT_INFEASIBLE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _clean(obj):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to null."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- solve ------------------------------------------------------------------------

def cmd_solve(args):
    problem = solver.problem_from_dict(_read_json(args.problem))
    fit = solver.FitConfig(n_starts=args.starts, seed=args.seed, feas_tol=args.feas_tol,
                           budget=args.budget, screen=not args.no_screen)
    cfg = solver.SolveConfig(fit=fit, t_tol=args.t_tol, bisect=not args.no_bisect)
    result = solver.solve_pick(problem, cfg)
    doc = result.to_dict()
    doc["problem"] = problem.to_dict()
    doc["config"] = {"seed": args.seed, "starts": args.starts, "feas_tol": args.feas_tol,
                     "t_tol": args.t_tol, "budget": args.budget,
                     "screen": not args.no_screen, "bisect": not args.no_bisect}
    text = dumps(doc)
    summary = f"status={result.status} t_star={result.t_star!r} residual={result.residual!r}"
    if args.out:
        Path(args.out).write_text(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return EXIT_INFEASIBLE if result.status == solver.INFEASIBLE_AT_T1 else EXIT_OK


# -- generate -----------------------------------------------------------------------

TRACE_HEADER = "theta,s_re,s_im,p_re,p_im,shilov_residual"


def boundary_trace(params, n=1024):
    theta = 2 * np.pi * np.arange(n) / n
    s, p = family.disc_eval(params, unit_circle(n))
    res = domains.shilov_residual(s, p)
    return np.column_stack([theta, s.real, s.imag, p.real, p.imag, res])


def cmd_generate(args):
    if args.m < 2:
        raise UsageError("--m must be at least 2")
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    for i in range(args.count):
        params = family.family_sample(rng, args.m, args.variant)
        (out / f"params_{i:03d}.json").write_text(dumps(family.params_to_dict(params)))
        np.savetxt(out / f"trace_{i:03d}.csv", boundary_trace(params, args.samples),
                   delimiter=",", header=TRACE_HEADER, comments="", fmt="%.17g")
    print(f"wrote {args.count} sample(s) to {out}")
    return EXIT_OK


# -- verify -----------------------------------------------------------------------

ALL_CHECKS = ("inner", "proper", "degree", "lift")


def load_disc(doc):
    """(disc callable, RationalPair or None, SchurParams or None) from JSON."""
    if isinstance(doc, dict) and "params" in doc and isinstance(doc["params"], dict):
        doc = doc["params"]                     # a solve result file
    if isinstance(doc, dict) and "auts" in doc:
        params = family.params_from_dict(doc)
        return family.ExtremalDisc(params), None, params
    if isinstance(doc, dict) and "s" in doc and "p" in doc:
        try:
            pair = analysis.RationalPair.from_dict(doc)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed rational disc: {exc!r}") from exc
        return pair, pair, None
    raise InputError("expected family parameters (field 'auts') or rational "
                     "coefficients (fields 's' and 'p')")


def run_checks(doc, checks, max_degree=None, m=None):
    disc, pair, params = load_disc(doc)
    reports = []
    for name in checks:
        if name == "inner":
            reports.append(analysis.is_g2_inner(disc))
        elif name == "proper":
            reports.append(analysis.is_proper_disc(disc))
        elif name == "degree":
            reports.append(_degree_report(pair, params, max_degree))
        elif name == "lift":
            reports.append(_lift_report(pair, params, m))
    return reports


def _rational_of(pair, params):
    if pair is not None:
        return pair
    return analysis.RationalPair(*family.to_rational(params))


def _degree_report(pair, params, max_degree):
    try:
        rp = _rational_of(pair, params)
    except SymbidiscError as exc:
        return analysis.Report("degree", None, 0.0, float("inf"), False,
                               {"error": type(exc).__name__, "message": str(exc)})
    bound = max(family.degree_bound(params)) if params is not None else max_degree
    deg = max(rp.s.degree, rp.p.degree)
    analytic = rp.s.is_analytic_on_closed_disc() and rp.p.is_analytic_on_closed_disc()
    ok = analytic and (bound is None or deg <= bound)
    return analysis.Report("degree", bound, 0.0, float(deg), ok,
                           {"degrees": [list(rp.s.degrees()), list(rp.p.degrees())],
                            "bound": bound, "analytic_on_closed_disc": analytic})


def _lift_report(pair, params, m):
    try:
        rp = _rational_of(pair, params)
        lift = analysis.lift_to_bidisc(rp)
    except SymbidiscError as exc:
        return analysis.Report("lift", [32, 64], 1e-10, float("inf"), False,
                               {"error": type(exc).__name__, "message": str(exc)})
    ok = lift.resubstitution <= 1e-10
    details = {"max_modulus": lift.max_modulus, "refinements": lift.refinements}
    if m is not None:
        deg = analysis.lifted_degree_check(rp, m)
        details["lifted_degree"] = deg.to_dict()
        ok = ok and deg.passed
    return analysis.Report("lift", [32, 64], 1e-10, lift.resubstitution, ok, details)


def cmd_verify(args):
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    bad = [c for c in checks if c not in ALL_CHECKS]
    if bad or not checks:
        raise UsageError(f"unknown checks {bad}; choose from {','.join(ALL_CHECKS)}")
    doc = _read_json(args.disc)
    docs = doc if isinstance(doc, list) else [doc]
    out, ok = [], True
    for d in docs:
        reports = run_checks(d, checks, args.max_degree, args.m)
        ok = ok and all(r.passed for r in reports)
        out.append([r.to_dict() for r in reports])
    body = out[0] if not isinstance(doc, list) else out
    _emit(dumps({"pass": ok, "reports": body}), args.out)
    return EXIT_OK if ok else EXIT_FAIL


# -- membership -------------------------------------------------------------------

def cmd_membership(args):
    s = complex(args.point[0], args.point[1])
    p = complex(args.point[2], args.point[3])
    if args.mode == "shilov":
        inside = domains.shilov_g2_contains((s, p), args.tol)
        value = float(domains.shilov_residual(s, p))
    else:
        inside = domains.g2_contains((s, p), args.mode)
        value = float(domains.g2_defining(s, p))
    print(json.dumps({"point": [[s.real, s.imag], [p.real, p.imag]], "mode": args.mode,
                      "member": bool(inside), "value": value}))
    return EXIT_OK if inside else EXIT_FAIL


# -- entry point --------------------------------------------------------------------

def build_parser():
    ap = _Parser(prog="symbidisc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("solve", help="solve a Pick problem in G2 by t-bisection")
    sp.add_argument("problem")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--starts", type=int, default=32)
    sp.add_argument("--feas-tol", type=float, default=1e-6)
    sp.add_argument("--t-tol", type=float, default=1e-3)
    sp.add_argument("--budget", type=int, default=20000)
    sp.add_argument("--no-screen", action="store_true",
                    help="always fit, never shortcut via the scalar Pick screen")
    sp.add_argument("--no-bisect", action="store_true", help="only test t = 1")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_solve)

    gp = sub.add_parser("generate", help="sample family members and boundary traces")
    gp.add_argument("--m", type=int, required=True)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--count", type=int, default=1)
    gp.add_argument("--variant", choices=[family.G2_MODE, family.RII_MODE], default=family.G2_MODE)
    gp.add_argument("--samples", type=int, default=1024)
    gp.add_argument("--out", required=True, help="output directory")
    gp.set_defaults(func=cmd_generate)

    vp = sub.add_parser("verify", help="run analysis checks on a disc")
    vp.add_argument("disc")
    vp.add_argument("--checks", default="inner,proper,degree")
    vp.add_argument("--max-degree", type=int, default=None,
                    help="degree bound for rational input")
    vp.add_argument("--m", type=int, default=None,
                    help="with the lift check, also test lifted Blaschke degrees <= m-1")
    vp.add_argument("--out")
    vp.set_defaults(func=cmd_verify)

    mp = sub.add_parser("membership", help="test a point against G2 or its Shilov boundary")
    mp.add_argument("--point", type=float, nargs=4, required=True,
                    metavar=("S_RE", "S_IM", "P_RE", "P_IM"))
    mp.add_argument("--mode", choices=[domains.INTERIOR, domains.CLOSURE, "shilov"],
                    default=domains.INTERIOR)
    mp.add_argument("--tol", type=float, default=1e-8)
    mp.set_defaults(func=cmd_membership)
    return ap


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"input error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
