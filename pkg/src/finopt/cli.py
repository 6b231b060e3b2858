"""Command-line interface.

Subcommands:
  analytic   closed-form optimum for one configuration
  sweep      closed-form optima across a list of h values
  optimize   numerical shape (and optionally length) optimization
  verify     optimality checks for a thickness profile read from CSV

Exit codes: 0 success, 1 numerical failure or failed optimality checks,
2 usage or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .analytic import (
    duffin_equivalent_flux,
    optimal_resistance_breakdown,
    optimal_solution,
    resistance_breakdown,
)
from .errors import DomainError, OptimizationError, ProfileFormatError, SolverError
from .mesh import Mesh, ThicknessProfile
from .optimizer import (
    OptimalityCheck,
    OptimizerOptions,
    evaluate_profile_optimality,
    optimize_length,
    optimize_profile,
)
from .problem import FinProblem
from .solver import compliance, solve_temperature, thickness_floor
from .tables import (
    format_float,
    read_profile_csv,
    write_history_csv,
    write_json,
    write_profile_csv,
    write_table_json,
    write_temperature_csv,
)

SUMMARY_KEYS = (
    "L", "t0", "theta0", "compliance",
    "r_fin", "r_cond", "r_conv", "biot", "duffin_flux",
)


def _add_physics_args(parser: argparse.ArgumentParser, with_h: bool = True) -> None:
    parser.add_argument("--k", type=float, required=True,
                        help="thermal conductivity, W/(m K)")
    if with_h:
        parser.add_argument("--h", type=float, required=True,
                            help="convection coefficient, W/(m^2 K)")
    parser.add_argument("--area", type=float, required=True,
                        help="profile area budget, m^2")
    parser.add_argument("--q0", type=float, required=True,
                        help="root heat input per unit width, W/m")
    parser.add_argument("--t-inf", type=float, default=0.0,
                        help="ambient temperature, K (default 0)")
    parser.add_argument("--width", type=float, default=1.0,
                        help="fin width, m (default 1)")


def _add_table_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--samples", type=int, default=201,
                        help="rows in the sampled tables (default 201)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="table file format (default csv)")
    parser.add_argument("--out-dir", type=Path, default=Path("."),
                        help="directory for output files (default .)")


def _add_threshold_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-grad-cv", type=float, default=1e-2,
                        help="limit on the temperature-gradient spread (default 0.01)")
    parser.add_argument("--max-tip-ratio", type=float, default=2e-2,
                        help="limit on theta(tip)/theta(root) (default 0.02)")
    parser.add_argument("--max-slope-err", type=float, default=2e-2,
                        help="limit on the relative dt/dx slope error (default 0.02)")
    parser.add_argument("--max-selfadjoint-gap", type=float, default=1e-10,
                        help="limit on max|w - theta|/theta(root) (default 1e-10)")


def _problem_from_args(args: argparse.Namespace, h: float | None = None) -> FinProblem:
    return FinProblem(
        k=args.k,
        h=args.h if h is None else h,
        area=args.area,
        q0=args.q0,
        t_inf=args.t_inf,
        width=args.width,
    )


def _sample_positions(length: float, samples: int) -> np.ndarray:
    if samples < 2:
        raise DomainError(f"--samples must be at least 2, got {samples}")
    return np.linspace(0.0, length, samples)


def _write_tables(args, stem_profile, stem_temperature, xs, t, theta) -> None:
    out = args.out_dir
    if args.format == "csv":
        write_profile_csv(out / f"{stem_profile}.csv", xs, t)
        write_temperature_csv(out / f"{stem_temperature}.csv", xs, theta)
    else:
        write_table_json(out / f"{stem_profile}.json",
                         ("x", "t", "t_half"), zip(xs, t, 0.5 * t))
        write_table_json(out / f"{stem_temperature}.json",
                         ("x", "theta"), zip(xs, theta))


def _analytic_summary(problem: FinProblem) -> dict:
    sol = optimal_solution(problem)
    breakdown = optimal_resistance_breakdown(problem, sol.length)
    return {
        "L": sol.length,
        "t0": sol.root_thickness,
        "theta0": sol.root_temp_diff,
        "compliance": sol.compliance,
        "r_fin": breakdown.r_fin,
        "r_cond": breakdown.r_cond,
        "r_conv": breakdown.r_conv,
        "biot": breakdown.biot,
        "duffin_flux": duffin_equivalent_flux(problem),
    }


def _config_echo(args: argparse.Namespace, command: str, **extra) -> dict:
    echo = {"command": command, "k": args.k, "area": args.area, "q0": args.q0,
            "t_inf": args.t_inf, "width": args.width}
    echo.update(extra)
    return echo


def cmd_analytic(args: argparse.Namespace) -> int:
    problem = _problem_from_args(args)
    summary = _analytic_summary(problem)
    sol = optimal_solution(problem)
    xs = _sample_positions(sol.length, args.samples)
    t = np.asarray(sol.thickness(xs))
    theta = np.asarray(sol.temperature(xs))

    args.out_dir.mkdir(parents=True, exist_ok=True)
    summary["config"] = _config_echo(args, "analytic", h=args.h,
                                     samples=args.samples, format=args.format)
    write_json(args.out_dir / "summary.json", summary)
    _write_tables(args, "profile", "temperature", xs, t, theta)
    print(f"optimal fin: L = {summary['L']:.6g} m, t0 = {summary['t0']:.6g} m, "
          f"compliance = {summary['compliance']:.6g} W K/m")
    return 0


def _h_label(h: float) -> str:
    if float(h).is_integer():
        return str(int(h))
    return format(h, "g").replace(".", "p").replace("-", "m")


def cmd_sweep(args: argparse.Namespace) -> int:
    problems = [(h, _problem_from_args(args, h=h)) for h in args.h_values]

    args.out_dir.mkdir(parents=True, exist_ok=True)
    summary_lines = [",".join(("h",) + SUMMARY_KEYS)]
    for h, problem in problems:
        summary = _analytic_summary(problem)
        sol = optimal_solution(problem)
        xs = _sample_positions(sol.length, args.samples)
        t = np.asarray(sol.thickness(xs))
        theta = np.asarray(sol.temperature(xs))
        label = _h_label(h)
        _write_tables(args, f"profile_h{label}", f"temperature_h{label}", xs, t, theta)
        summary_lines.append(
            ",".join([format_float(h)] + [format_float(summary[k]) for k in SUMMARY_KEYS])
        )
        print(f"h = {h:g}: L = {summary['L']:.6g} m, t0 = {summary['t0']:.6g} m")
    (args.out_dir / "summary.csv").write_text("\n".join(summary_lines) + "\n")
    return 0


def _threshold_checks(problem: FinProblem, check: OptimalityCheck,
                      args: argparse.Namespace) -> list[tuple[str, float, float]]:
    slope_target = 2.0 * problem.h / problem.k
    slope_err = abs(check.thickness_slope - slope_target) / slope_target
    return [
        ("grad_temp_cv", check.grad_temp_cv, args.max_grad_cv),
        ("tip_temp_ratio", check.tip_temp_ratio, args.max_tip_ratio),
        ("thickness_slope_err", slope_err, args.max_slope_err),
        ("selfadjoint_gap", check.selfadjoint_gap, args.max_selfadjoint_gap),
    ]


def _report_checks(checks: list[tuple[str, float, float]]) -> bool:
    all_ok = True
    for name, value, limit in checks:
        ok = value <= limit
        all_ok = all_ok and ok
        print(f"{'PASS' if ok else 'FAIL'} {name}: {value:.3e} (limit {limit:.3e})")
    return all_ok


def cmd_optimize(args: argparse.Namespace) -> int:
    problem = _problem_from_args(args)
    bracket = tuple(args.length_bracket) if args.length_bracket else None
    options = OptimizerOptions(
        n_cells=args.n_cells,
        max_inner_iters=args.max_inner_iters,
        oc_damping=args.oc_damping,
        move_limit=args.move_limit,
        lambda_bisect_tol=args.lambda_tol,
        converge_tol=args.converge_tol,
        length_bracket=bracket,
        length_tol=args.length_tol,
    )
    if args.fixed_length is not None:
        report = optimize_profile(problem, args.fixed_length, options)
    else:
        report = optimize_length(problem, options)

    theta = solve_temperature(problem, report.profile)
    breakdown = resistance_breakdown(problem, report.compliance, report.length)
    checks = _threshold_checks(problem, report.optimality, args)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    payload = {
        "length": report.length,
        "compliance": report.compliance,
        "lagrange_multiplier": report.lagrange_multiplier,
        "inner_iterations": report.inner_iterations,
        "biot": breakdown.biot,
        "optimality": {
            "grad_temp_cv": report.optimality.grad_temp_cv,
            "thickness_grad_linfit_residual":
                report.optimality.thickness_grad_linfit_residual,
            "tip_temp_ratio": report.optimality.tip_temp_ratio,
            "selfadjoint_gap": report.optimality.selfadjoint_gap,
            "grad_temp_mean": report.optimality.grad_temp_mean,
            "thickness_slope": report.optimality.thickness_slope,
        },
        "checks": {
            name: {"value": value, "limit": limit, "passed": value <= limit}
            for name, value, limit in checks
        },
        "config": _config_echo(
            args, "optimize", h=args.h, n_cells=args.n_cells,
            max_inner_iters=args.max_inner_iters, oc_damping=args.oc_damping,
            move_limit=args.move_limit, lambda_bisect_tol=args.lambda_tol,
            converge_tol=args.converge_tol,
            fixed_length=args.fixed_length,
            length_bracket=list(bracket) if bracket else None,
            length_tol=args.length_tol,
        ),
    }
    write_json(args.out_dir / "report.json", payload)
    write_history_csv(args.out_dir / "history.csv", report.history)
    # thickness lives at face midpoints; the table spans [0, L] node-wise so
    # the file can be fed straight back into the verify subcommand
    mesh = report.profile.mesh
    t_f = report.profile.values
    t_nodes = np.interp(mesh.nodes, mesh.faces, t_f)
    t_nodes[0] = max(1.5 * t_f[0] - 0.5 * t_f[1], 0.0)
    t_nodes[-1] = max(1.5 * t_f[-1] - 0.5 * t_f[-2], 0.0)
    write_profile_csv(args.out_dir / "profile.csv", mesh.nodes, t_nodes)
    write_temperature_csv(args.out_dir / "temperature.csv",
                          mesh.nodes, theta.values)

    print(f"optimized fin: L = {report.length:.6g} m, "
          f"compliance = {report.compliance:.6g} W K/m, "
          f"{report.inner_iterations} inner iterations")
    return 0 if _report_checks(checks) else 1


def cmd_verify(args: argparse.Namespace) -> int:
    problem = _problem_from_args(args)
    xs, ts = read_profile_csv(args.profile)
    if abs(xs[0]) > 1e-9 * xs[-1]:
        raise ProfileFormatError(
            f"{args.profile}: profile must start at x = 0, got {xs[0]}"
        )
    length = float(xs[-1])
    mesh = Mesh(args.n_cells, length)
    floor = thickness_floor(problem, length)
    values = np.maximum(np.interp(mesh.faces, xs, ts), floor)
    profile = ThicknessProfile(mesh, values)

    check = evaluate_profile_optimality(problem, profile)
    theta = solve_temperature(problem, profile)
    breakdown = resistance_breakdown(problem, compliance(problem, theta), length)
    print(f"profile: L = {length:.6g} m, area = {profile.area:.6g} m^2, "
          f"biot = {breakdown.biot:.4g}")
    checks = _threshold_checks(problem, check, args)
    return 0 if _report_checks(checks) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finopt",
        description="Optimal cooling-fin design: closed forms, finite-volume "
                    "verification, and shape optimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analytic", help="closed-form optimum for one configuration")
    _add_physics_args(p)
    _add_table_args(p)
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("sweep", help="closed-form optima across h values")
    _add_physics_args(p, with_h=False)
    p.add_argument("--h-values", type=float, nargs="+",
                   default=[20.0, 50.0, 100.0, 200.0],
                   help="convection coefficients to sweep (default 20 50 100 200)")
    _add_table_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="numerical shape/length optimization")
    _add_physics_args(p)
    p.add_argument("--n-cells", type=int, default=1000,
                   help="mesh cells for the discrete model (default 1000)")
    p.add_argument("--max-inner-iters", type=int, default=500)
    p.add_argument("--oc-damping", type=float, default=0.5)
    p.add_argument("--move-limit", type=float, default=0.2)
    p.add_argument("--lambda-tol", type=float, default=1e-10,
                   help="relative area tolerance for the multiplier bisection")
    p.add_argument("--converge-tol", type=float, default=1e-8,
                   help="max relative profile change that counts as converged")
    p.add_argument("--fixed-length", type=float, default=None,
                   help="skip the length search and optimize at this length, m")
    p.add_argument("--length-bracket", type=float, nargs=2, default=None,
                   metavar=("LO", "HI"),
                   help="length search bracket, m (default 0.3x to 3x the "
                        "closed-form optimum)")
    p.add_argument("--length-tol", type=float, default=None,
                   help="length search tolerance, m (default bracket/1000)")
    _add_threshold_args(p)
    p.add_argument("--out-dir", type=Path, default=Path("."),
                   help="directory for output files (default .)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="optimality checks for a profile CSV")
    p.add_argument("profile", type=Path, help="profile table with columns x,t")
    _add_physics_args(p)
    p.add_argument("--n-cells", type=int, default=1000)
    _add_threshold_args(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ProfileFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, OptimizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
