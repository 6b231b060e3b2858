"""Benchmark the compiled tridiagonal kernel against the pure-Python fallback.

Times the raw SPD tridiagonal solve on the assembled fin system (the hot
kernel: every inner optimizer iteration performs one forward and one adjoint
solve) and a full fixed-length profile optimization, once per backend.  Both
backends must produce bitwise-identical results; the script asserts that.

Run from the repository root after an editable install:

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --n-cells 4000 --repeats 500
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from finopt import (
    FinProblem,
    Mesh,
    OptimizerOptions,
    ThicknessProfile,
    kernels,
    optimal_length,
    optimize_profile,
)
from finopt.solver import assemble_fin_system


def time_solves(diag, off, rhs, repeats: int) -> tuple[float, np.ndarray]:
    out = kernels.solve_spd_tridiagonal(diag, off, rhs)  # warm up
    start = time.perf_counter()
    for _ in range(repeats):
        out = kernels.solve_spd_tridiagonal(diag, off, rhs)
    return (time.perf_counter() - start) / repeats, out


def time_optimize(problem, length, options) -> tuple[float, object]:
    start = time.perf_counter()
    report = optimize_profile(problem, length, options)
    return time.perf_counter() - start, report


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-cells", type=int, default=1000)
    parser.add_argument("--repeats", type=int, default=2000,
                        help="raw-solve repetitions per backend")
    args = parser.parse_args()

    problem = FinProblem(k=200.0, h=20.0, area=1.6e-4, q0=20.0)
    length = optimal_length(problem)
    mesh = Mesh(args.n_cells, length)
    profile = ThicknessProfile.constant(mesh, problem.area / length)
    diag, off, rhs = assemble_fin_system(problem, profile)
    options = OptimizerOptions(n_cells=args.n_cells)

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}   system size: {mesh.n_nodes}")

    solve_times: dict[str, float] = {}
    solve_results: dict[str, np.ndarray] = {}
    opt_times: dict[str, float] = {}
    opt_compliance: dict[str, float] = {}
    for name in backends:
        kernels.set_backend(name)
        solve_times[name], solve_results[name] = time_solves(
            diag, off, rhs, args.repeats
        )
        opt_times[name], report = time_optimize(problem, length, options)
        opt_compliance[name] = report.compliance
        print(
            f"{name:>8}: tridiagonal solve {solve_times[name] * 1e6:8.1f} us"
            f"   fixed-length optimize {opt_times[name]:6.3f} s"
            f"   ({report.inner_iterations} iterations)"
        )

    if len(backends) == 2:
        a, b = backends
        assert np.array_equal(solve_results[a], solve_results[b]), \
            "backends disagree on the raw solve"
        assert opt_compliance[a] == opt_compliance[b], \
            "backends disagree on the optimized compliance"
        ratio = solve_times["python"] / solve_times["cython"]
        print(f"results bitwise identical; raw-solve speedup {ratio:.1f}x")


if __name__ == "__main__":
    main()
