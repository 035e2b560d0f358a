"""Command-line front end.

Exit codes: 0 success, 1 analysis-level failure, 2 invalid arguments.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import _backend
from .billiard_map import DEFAULT_ESCAPE_RADIUS
from .curve import CurveParams
from .gutkin import solve_gutkin, verify_invariant_curve
from .integrability import integrability_integral, verdict
from .periodic import classify, detect_period, elliptic_hyperbolic_seeds
from .phase_portrait import (
    RasterConfig,
    RasterMode,
    Window,
    default_window,
    rasterize,
    run_portrait,
    sample_initial_points,
    write_csv,
    write_ppm,
)


class UsageError(Exception):
    pass


class AnalysisFailure(Exception):
    pass


def fmt(v) -> str:
    return f"{v:.10g}"


def _params(args) -> CurveParams:
    try:
        return CurveParams(args.n, args.eps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print("\n".join(lines))


def cmd_gutkin(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    roots = solve_gutkin(args.n, args.tol)
    rows = [{"x": r.x, "r": r.r, "shift": r.shift} for r in roots]
    lines = ["x\tr\tshift"] + [f"{fmt(r['x'])}\t{fmt(r['r'])}\t{fmt(r['shift'])}" for r in rows]
    _emit(args, {"n": args.n, "roots": rows}, lines)
    return 0


def cmd_verify(args) -> int:
    params = _params(args)
    if args.x is not None:
        x = args.x
    else:
        roots = solve_gutkin(params.n)
        if not 0 <= args.root < len(roots):
            raise AnalysisFailure(f"n={params.n} has {len(roots)} Gutkin roots; no root index {args.root}")
        x = roots[args.root].x
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    rep = verify_invariant_curve(params, x, args.samples)
    ok = rep.passed(args.tol)
    payload = {
        "n": params.n, "eps": params.eps, "x": x, "samples": args.samples, "tol": args.tol,
        "max_position_error": rep.max_position_error, "max_mu_deviation": rep.max_mu_deviation,
        "passed": ok,
    }
    _emit(args, payload, [
        f"x = {fmt(x)}",
        f"max_position_error = {fmt(rep.max_position_error)}",
        f"max_mu_deviation = {fmt(rep.max_mu_deviation)}",
        "PASS" if ok else "FAIL",
    ])
    return 0 if ok else 1


def cmd_integrability(args) -> int:
    params = _params(args)
    if args.t_nodes < 8 or args.u_nodes < 8:
        raise UsageError("node counts must be >= 8")
    roots = solve_gutkin(params.n)
    if len(roots) < args.pair + 2:
        raise AnalysisFailure(f"fewer than two Gutkin roots for n={params.n} (found {len(roots)})")
    x1, x2 = roots[args.pair], roots[args.pair + 1]
    res = integrability_integral(params, x1, x2, args.t_nodes, args.u_nodes)
    v = verdict(res)
    payload = {
        "n": params.n, "eps": params.eps, "x1": x1.x, "x2": x2.x, "I": res.value,
        "error_estimate": res.error_estimate, "t_nodes": res.t_nodes, "u_nodes": res.u_nodes,
        "verdict": v.value,
    }
    _emit(args, payload, [
        f"x1 = {fmt(x1.x)}", f"x2 = {fmt(x2.x)}",
        f"I = {fmt(res.value)}", f"error_estimate = {fmt(res.error_estimate)}",
        f"verdict = {v.value}",
    ])
    return 0


def cmd_periodic(args) -> int:
    params = _params(args)
    if params.n < 3:
        raise UsageError("periodic points need --n >= 3")
    E, H = elliptic_hyperbolic_seeds(params)
    rows = []
    for kind, seeds in (("E", E), ("H", H)):
        for k, pt in enumerate(seeds):
            period = detect_period(params, pt, args.max_period, args.tol)
            row = {"k": k, "type": kind, "x": pt.x, "y": pt.y, "period": period, "trace": None, "classification": None}
            if period is not None:
                rep = classify(params, pt, period)
                row["trace"] = rep.monodromy_trace
                row["classification"] = rep.classification.value
            rows.append(row)
    lines = ["k\ttype\tx\ty\tperiod\ttrace\tclassification"]
    for r in rows:
        trace = "-" if r["trace"] is None else fmt(r["trace"])
        lines.append(f"{r['k']}\t{r['type']}\t{fmt(r['x'])}\t{fmt(r['y'])}\t{r['period'] or '-'}\t{trace}\t{r['classification'] or '-'}")
    _emit(args, {"n": params.n, "eps": params.eps, "points": rows}, lines)
    return 0 if all(r["period"] is not None for r in rows) else 1


def cmd_portrait(args) -> int:
    params = _params(args)
    if args.points < 0 or args.iters < 0:
        raise UsageError("--points and --iters must be >= 0")
    try:
        window = Window(*args.window) if args.window else None
        raster = RasterConfig(args.resolution, args.resolution, RasterMode(args.mode))
        seeds = sample_initial_points(params, args.points, args.lambda_min, args.lambda_max, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    start = time.perf_counter()
    orbits = run_portrait(params, seeds, args.iters, args.escape_radius, threads=args.threads)
    elapsed = time.perf_counter() - start
    if window is None:
        window = default_window(orbits)
    if args.csv:
        write_csv(orbits, args.csv)
    if args.ppm:
        write_ppm(rasterize(orbits, window, raster), args.ppm)
    payload = {
        "n": params.n, "eps": params.eps, "points": args.points, "iters": args.iters, "seed": args.seed,
        "escaped": sum(o.escaped for o in orbits), "failed": sum(o.error is not None for o in orbits),
        "stored_points": sum(len(o) for o in orbits),
        "window": [window.x_min, window.y_min, window.x_max, window.y_max],
        "csv": args.csv, "ppm": args.ppm, "backend": _backend.name,
    }
    lines = [f"{k} = {fmt(v) if isinstance(v, float) else v}" for k, v in payload.items() if k != "window"]
    lines.append("window = " + " ".join(fmt(v) for v in payload["window"]))
    lines.append(f"elapsed_s = {elapsed:.3f}")
    _emit(args, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="outer-billiards", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, curve=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit one JSON object")
        if curve:
            p.add_argument("--n", type=int, default=7)
            p.add_argument("--eps", type=float, default=0.01)
        p.set_defaults(func=func)
        return p

    p = add("gutkin", cmd_gutkin, "roots of tan(nx) = n tan(x) in (0, pi/2)", curve=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-12)

    p = add("verify", cmd_verify, "check an invariant offset curve")
    p.add_argument("--root", type=int, default=0, help="index of the Gutkin root")
    p.add_argument("--x", type=float, default=None, help="explicit half-shift x instead of a root")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-8)

    p = add("integrability", cmd_integrability, "total-integrability test integral")
    p.add_argument("--t-nodes", type=int, default=256)
    p.add_argument("--u-nodes", type=int, default=64)
    p.add_argument("--pair", type=int, default=0, help="use roots pair and pair+1")

    p = add("periodic", cmd_periodic, "symmetry periodic points and their stability")
    p.add_argument("--max-period", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-8)

    p = add("portrait", cmd_portrait, "phase portrait to CSV and/or PPM")
    p.add_argument("--points", type=int, default=500)
    p.add_argument("--iters", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", type=float, nargs=4, metavar=("XMIN", "YMIN", "XMAX", "YMAX"))
    p.add_argument("--csv", default=None)
    p.add_argument("--ppm", default=None)
    p.add_argument("--resolution", type=int, default=2000)
    p.add_argument("--mode", choices=[m.value for m in RasterMode], default="density")
    p.add_argument("--lambda-min", type=float, default=0.3)
    p.add_argument("--lambda-max", type=float, default=2.0)
    p.add_argument("--escape-radius", type=float, default=DEFAULT_ESCAPE_RADIUS)
    p.add_argument("--threads", type=int, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AnalysisFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
