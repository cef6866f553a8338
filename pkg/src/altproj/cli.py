"""Experiment runner.

Verbs:
  altproj run <scenario.json> [--out-dir DIR]
  altproj overrelax --nu2 V --alphas A1,A2,... --seed S [--max-iters N] [--out CSV]
  altproj truncate --p P --r R --dims D1,D2,... [--alpha A] [--max-iters N] [--out CSV]
  altproj check-schedule <schedule.json> --mu V [--horizon N] [--growth-threshold X]

Scenario files are JSON with a top-level "version" field; all randomness must
be seeded so a scenario fully determines its outputs. Trace CSVs have the
fixed columns n, alpha_n, error_norm, residual_dW, rho_alpha_n.

Exit codes: 0 success, 2 config error, 3 numerical failure (NaN detected).
The ALTPROJ_TOL environment variable overrides the global rank tolerance.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from .validation import INTERSECTION_TOL, global_tol
from .subspace import canonicalize
from .angles import compute_report
from .projector import build, least_squares_set
from .schedule import Schedule, diagnose
from .engine import contraction_factor, rate_bound, run_alternating
from . import problems

SCENARIO_VERSION = 1


class ConfigError(ValueError):
    pass


class NumericalFailure(RuntimeError):
    pass


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc


def _build_u0(cfg, u_space):
    kind = cfg.get("type", "zero")
    if kind == "zero":
        return np.zeros(u_space.dim_ambient)
    if kind == "explicit":
        return np.asarray(cfg["value"], dtype=float)
    if kind == "random":
        if "seed" not in cfg:
            raise ConfigError("random u0 requires a seed")
        return problems.random_point_in(u_space, int(cfg["seed"]), scale=float(cfg.get("scale", 1.0)))
    raise ConfigError(f"unknown u0 type {kind!r}")


def _fmt(x):
    return "" if x is None else f"{x:.17g}"


def _write_trace_csv(path, trace, q):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "alpha_n", "error_norm", "residual_dW", "rho_alpha_n"])
        for n, alpha in enumerate(trace.alphas_used):
            writer.writerow([
                n,
                _fmt(float(alpha)),
                _fmt(float(trace.error_norms[n])),
                _fmt(float(trace.residuals[n])),
                _fmt(contraction_factor(q, float(alpha))),
            ])


def run_scenario(path, out_dir=None):
    """Execute a scenario file end to end; returns the summary record dict and
    writes the configured output files."""
    cfg = _load_json(path) if not isinstance(path, dict) else path
    if cfg.get("version") != SCENARIO_VERSION:
        raise ConfigError(f"scenario version must be {SCENARIO_VERSION}")
    out_dir = Path(out_dir) if out_dir is not None else Path.cwd()

    try:
        g = canonicalize(problems.geometry_from_config(cfg["geometry"]))
        sched = Schedule.from_dict(cfg["schedule"])
        u0 = _build_u0(cfg.get("u0", {"type": "zero"}), g.u_space)
        max_iters = int(cfg.get("max_iters", 10_000))
        conv_tol = float(cfg.get("conv_tol", 1e-10))
        itol = float(cfg.get("intersection_tol", INTERSECTION_TOL))
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc

    report = compute_report(g, tol=itol)
    q = build(g, tol=itol)
    trace = run_alternating(g, sched, u0, max_iters=max_iters, conv_tol=conv_tol, tol=itol)
    lss = least_squares_set(q, g.w_offset)

    if not np.isfinite(trace.final_error):
        raise NumericalFailure("non-finite error norm in trace")

    alphas = trace.alphas_used if trace.n_steps else sched.alphas(1)
    bound = rate_bound(report.nu, report.gamma, alphas).bound if report.nu > 0 else None
    verdict = diagnose(sched, report.nu ** 2, horizon=min(max_iters, 10_000)).verdict \
        if report.nu > 0 else "indeterminate"

    summary = {
        "nu": report.nu,
        "gamma": report.gamma,
        "norm_Q": q.norm,
        "gamma_Q": q.reduced_min_modulus,
        "residual_at_limit": lss.residual_norm,
        "stop_reason": trace.stop_reason,
        "iters": trace.n_steps,
        "final_error": trace.final_error,
        "empirical_rate": trace.estimated_rate,
        "theoretical_bound": bound,
        "schedule_verdict": verdict,
    }

    outputs = cfg.get("outputs", {})
    if "trace_csv" in outputs:
        _write_trace_csv(out_dir / outputs["trace_csv"], trace, q)
    if "summary_json" in outputs:
        with open(out_dir / outputs["summary_json"], "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return summary


def overrelaxation_study(nu2, alphas, seed, max_iters=10_000, conv_tol=1e-9):
    """Constant-relaxation sweep on a geometry with operator norm sqrt(nu2).

    Demonstrates convergence for every alpha with alpha*nu2 in (0, 2), even
    beyond the classical limit of 2, and growth above the boundary. Returns a
    list of row dicts (alpha, alpha_nu2, verdict, empirical_rate, rho_alpha).
    """
    if not (0 < nu2 <= 1):
        raise ConfigError("nu2 must be in (0, 1]")
    phi = math.asin(math.sqrt(nu2))
    g = canonicalize(problems.controlled_angle_geometry([phi], offset_norm=0.5,
                                                        rotation_seed=seed))
    q = build(g)
    u0 = problems.random_point_in(g.u_space, seed + 1)
    rows = []
    for alpha in alphas:
        if alpha < 0:
            raise ConfigError("alpha grid values must be nonnegative")
        trace = run_alternating(g, Schedule.constant(alpha), u0,
                                max_iters=max_iters, conv_tol=conv_tol,
                                divergence_cap=1e6)
        e = trace.error_norms
        if trace.stop_reason == "converged":
            verdict = "converged"
        elif trace.stop_reason == "diverged" or (e[-1] > e[0] and e[-1] >= e[max(0, len(e) - 101)]):
            verdict = "diverged"
        else:
            verdict = "not-converged"
        rows.append({
            "alpha": float(alpha),
            "alpha_nu2": float(alpha) * nu2,
            "verdict": verdict,
            "empirical_rate": trace.estimated_rate,
            "rho_alpha": contraction_factor(q, float(alpha)),
            "trace": trace,
        })
    return rows


def truncation_study(p, r, dims, alpha=1.0, max_iters=2000):
    """Dimension-truncation study of the diagonal family with singular values
    i^-p and data i^-r.

    When the infinite-dimensional coefficient series diverges, the minimum-norm
    solution norm grows without bound in the truncation dimension; the study
    reports that growth next to the norm reached by the iteration.
    """
    closed = problems.diagonal_truncation_norms(p, r, dims)
    sched = Schedule.constant(alpha)
    rows = []
    for d, limit_norm in zip(dims, closed):
        u = problems.run_diagonal_landweber(p, r, d, sched, max_iters)
        rows.append({
            "d": int(d),
            "limit_norm": float(limit_norm),
            "iterate_norm": float(np.linalg.norm(u)),
            "iters": int(max_iters),
        })
    return rows


def _write_rows_csv(path, rows, columns):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([
                row[c] if not isinstance(row[c], float) else _fmt(row[c])
                for c in columns
            ])


def _parse_float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad numeric list {text!r}") from exc


def _cmd_run(args):
    summary = run_scenario(args.scenario, out_dir=args.out_dir)
    json.dump(summary, sys.stdout, indent=2, sort_keys=True)
    print()
    return 0


def _cmd_overrelax(args):
    rows = overrelaxation_study(args.nu2, _parse_float_list(args.alphas), args.seed,
                                max_iters=args.max_iters)
    cols = ["alpha", "alpha_nu2", "verdict", "empirical_rate", "rho_alpha"]
    if args.out:
        _write_rows_csv(args.out, rows, cols)
    for row in rows:
        print(f"alpha={row['alpha']:g} alpha_nu2={row['alpha_nu2']:g} "
              f"verdict={row['verdict']} rho={row['rho_alpha']:g}")
    return 0


def _cmd_truncate(args):
    dims = [int(v) for v in _parse_float_list(args.dims)]
    rows = truncation_study(args.p, args.r, dims, alpha=args.alpha, max_iters=args.max_iters)
    cols = ["d", "limit_norm", "iterate_norm", "iters"]
    if args.out:
        _write_rows_csv(args.out, rows, cols)
    for row in rows:
        print(f"d={row['d']} limit_norm={row['limit_norm']:.6g} "
              f"iterate_norm={row['iterate_norm']:.6g}")
    return 0


def _cmd_check_schedule(args):
    sched = Schedule.from_dict(_load_json(args.schedule))
    diag = diagnose(sched, args.mu, horizon=args.horizon,
                    growth_threshold=args.growth_threshold)
    out = {
        "verdict": diag.verdict,
        "partial_sum": float(diag.partial_sums[-1]),
        "in_box": diag.in_box,
        "box_eps": diag.box_eps,
        "violations": diag.violations,
        "scaled_by": diag.scaled_by,
    }
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    print()
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="altproj",
        description="Relaxed alternating projections between affine subspaces: "
                    "experiment runner and schedule diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario file")
    p_run.add_argument("scenario")
    p_run.add_argument("--out-dir", default=None)
    p_run.set_defaults(func=_cmd_run)

    p_over = sub.add_parser("overrelax", help="constant-relaxation sweep beyond 2")
    p_over.add_argument("--nu2", type=float, required=True)
    p_over.add_argument("--alphas", required=True, help="comma-separated grid")
    p_over.add_argument("--seed", type=int, required=True)
    p_over.add_argument("--max-iters", type=int, default=10_000)
    p_over.add_argument("--out", default=None)
    p_over.set_defaults(func=_cmd_overrelax)

    p_trunc = sub.add_parser("truncate", help="dimension-truncation study")
    p_trunc.add_argument("--p", type=float, required=True)
    p_trunc.add_argument("--r", type=float, required=True)
    p_trunc.add_argument("--dims", required=True, help="comma-separated dimensions")
    p_trunc.add_argument("--alpha", type=float, default=1.0)
    p_trunc.add_argument("--max-iters", type=int, default=2000)
    p_trunc.add_argument("--out", default=None)
    p_trunc.set_defaults(func=_cmd_truncate)

    p_sched = sub.add_parser("check-schedule", help="diagnose a schedule file")
    p_sched.add_argument("schedule")
    p_sched.add_argument("--mu", type=float, required=True)
    p_sched.add_argument("--horizon", type=int, default=10_000)
    p_sched.add_argument("--growth-threshold", type=float, default=50.0)
    p_sched.set_defaults(func=_cmd_check_schedule)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        global_tol()  # fail fast on a malformed ALTPROJ_TOL
        return args.func(args)
    except (ConfigError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
