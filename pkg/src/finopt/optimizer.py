"""Shape optimization of the fin by optimality criteria plus a length search.

Inner problem (fixed length): minimize compliance over face thickness under
the trapezoidal area budget.  Each iteration scales every face by
(density / lambda)^eta, where density = k (dtheta/dx)^2 is the (sign
flipped) gradient density and lambda is bisected until the updated profile
meets the area budget; moves are clipped to a relative limit and floored at
the solver's thickness floor.  For this self-adjoint objective the update
is a descent scheme in practice, and its fixed point is the discrete
stationary profile.

Outer problem: golden-section search of compliance over the fin length.
The closed-form optimal length is used only to place the default bracket;
the search itself never consults it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import analytic
from .errors import DomainError, OptimizationError
from .mesh import Mesh, ThicknessProfile
from .problem import FinProblem
from .sensitivity import TIP_EXCLUSION, interior_face_mask, solve_adjoint
from .solver import solve_temperature, thickness_floor, variational_compliance

__all__ = [
    "InnerIteration",
    "OptimalityCheck",
    "OptimizationReport",
    "OptimizerOptions",
    "evaluate_profile_optimality",
    "feasible_constant_profile",
    "optimize_length",
    "optimize_profile",
    "verify_optimality",
]

#: Relative slack allowed when checking that compliance never increases.
DESCENT_SLACK = 1e-12

#: Relative bracket width at which the multiplier bisection stops.  Fixed
#: (rather than stopping on the area test) so that runs whose inputs differ
#: only by a scale factor take identical bisection paths.
BISECT_WIDTH = 1e-14


@dataclass(frozen=True)
class OptimizerOptions:
    """Knobs for the inner OC iteration and the outer length search."""

    n_cells: int = 1000
    max_inner_iters: int = 500
    oc_damping: float = 0.5
    move_limit: float = 0.2
    lambda_bisect_tol: float = 1e-10
    converge_tol: float = 1e-8
    length_bracket: tuple[float, float] | None = None
    length_tol: float | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.n_cells, (int, np.integer)) or self.n_cells < 4:
            raise DomainError(f"n_cells must be an integer >= 4, got {self.n_cells!r}")
        object.__setattr__(self, "n_cells", int(self.n_cells))
        if self.max_inner_iters < 1:
            raise DomainError("max_inner_iters must be at least 1")
        if not 0.0 < self.oc_damping <= 1.0:
            raise DomainError(f"oc_damping must be in (0, 1], got {self.oc_damping}")
        if not 0.0 < self.move_limit < 1.0:
            raise DomainError(f"move_limit must be in (0, 1), got {self.move_limit}")
        if not self.lambda_bisect_tol > 0.0:
            raise DomainError("lambda_bisect_tol must be positive")
        if not self.converge_tol > 0.0:
            raise DomainError("converge_tol must be positive")
        if self.length_bracket is not None:
            lo, hi = self.length_bracket
            if not (0.0 < lo < hi and math.isfinite(hi)):
                raise DomainError(
                    f"length_bracket must satisfy 0 < lo < hi, got {self.length_bracket}"
                )
            object.__setattr__(self, "length_bracket", (float(lo), float(hi)))
        if self.length_tol is not None and not self.length_tol > 0.0:
            raise DomainError("length_tol must be positive")


@dataclass(frozen=True)
class InnerIteration:
    """One row of the inner-loop history."""

    compliance: float
    area_error: float
    max_change: float


@dataclass(frozen=True)
class OptimalityCheck:
    """Residual metrics of the optimality conditions for a profile.

    grad_temp_cv                 spread of dtheta/dx where it should be constant
    thickness_grad_linfit_residual  misfit of dt/dx to a straight line
    tip_temp_ratio               theta(tip) / theta(root)
    selfadjoint_gap              max |w - theta| / theta(root)
    grad_temp_mean               mean dtheta/dx (should be -q0 / (h L^2))
    thickness_slope              fitted d(dt/dx)/dx (should be 2 h / k)
    """

    grad_temp_cv: float
    thickness_grad_linfit_residual: float
    tip_temp_ratio: float
    selfadjoint_gap: float
    grad_temp_mean: float
    thickness_slope: float


@dataclass(frozen=True, eq=False)
class OptimizationReport:
    """Outcome of an inner (and optionally outer) optimization run."""

    profile: ThicknessProfile
    length: float
    compliance: float
    lagrange_multiplier: float
    inner_iterations: int
    history: tuple[InnerIteration, ...] = field(repr=False)
    optimality: OptimalityCheck


def feasible_constant_profile(mesh: Mesh, area: float) -> ThicknessProfile:
    """Constant profile whose face integral equals the area budget."""
    return ThicknessProfile.constant(mesh, area / mesh.length)


def _face_integral(values: np.ndarray, dx: float) -> float:
    # Same arithmetic as ThicknessProfile.area: midpoint rule over faces.
    return float(np.sum(values)) * dx


def _oc_step(
    values: np.ndarray,
    density: np.ndarray,
    target_area: float,
    floor: float,
    dx: float,
    eta: float,
    move: float,
) -> tuple[float, np.ndarray]:
    """One multiplier-bisected OC update; returns (lambda, new values)."""

    def updated(lam: float) -> np.ndarray:
        # A denormal-small multiplier can push density / lam to inf; the
        # clip maps it to the move limit, which is the intended reading.
        with np.errstate(over="ignore"):
            factor = np.clip((density / lam) ** eta, 1.0 - move, 1.0 + move)
        return np.maximum(values * factor, floor)

    # Faces deep inside a floored tail can see an exactly flat temperature
    # (adjacent values identical in float64), giving zero density; they take
    # the full down-move for any positive multiplier, so the bracket comes
    # from the positive densities alone.
    positive = density[density > 0.0]
    if positive.size == 0:
        raise OptimizationError("gradient density vanished; nothing to redistribute")
    lo = float(np.min(positive))
    hi = float(np.max(positive))
    if hi - lo <= 1e-300:
        return hi, updated(hi)

    # The extremes of the density bracket the multiplier, up to round-off;
    # expand defensively if the running area sits a hair off the budget.
    for _ in range(64):
        if _face_integral(updated(lo), dx) >= target_area:
            break
        lo *= 0.5
    else:
        raise OptimizationError("could not bracket the area multiplier from below")
    for _ in range(64):
        if _face_integral(updated(hi), dx) <= target_area:
            break
        hi *= 2.0
    else:
        raise OptimizationError("could not bracket the area multiplier from above")

    while hi - lo > BISECT_WIDTH * hi:
        mid = 0.5 * (lo + hi)
        if _face_integral(updated(mid), dx) >= target_area:
            lo = mid
        else:
            hi = mid
    lam = 0.5 * (lo + hi)
    return lam, updated(lam)


def optimize_profile(
    problem: FinProblem,
    length: float,
    options: OptimizerOptions = OptimizerOptions(),
    initial_profile: ThicknessProfile | None = None,
) -> OptimizationReport:
    """Optimality-criteria minimization of compliance at fixed fin length.

    The iteration runs on the unit-load solve and rescales compliance by
    q0^2 afterwards: the optimal shape does not depend on the load
    magnitude, and factoring it out makes the profile trajectory bitwise
    identical for every q0 > 0.
    """
    if problem.q0 <= 0.0:
        raise DomainError("shape optimization needs a positive root heat input")
    mesh = Mesh(options.n_cells, length)
    floor = thickness_floor(problem, length)
    target_area = problem.area
    unit_problem = replace(problem, q0=1.0)
    load_scale = problem.q0 * problem.q0

    if initial_profile is None:
        values = np.array(feasible_constant_profile(mesh, target_area).values)
    else:
        if initial_profile.mesh != mesh:
            raise DomainError(
                "initial profile mesh does not match the requested discretization"
            )
        values = np.maximum(initial_profile.values, floor)
    if float(np.min(values)) < floor:
        raise DomainError("initial profile is below the thickness floor")

    dx = mesh.dx
    profile = ThicknessProfile(mesh, values)
    theta_hat = solve_temperature(unit_problem, profile)
    # Track the energy-recovered compliance: its evaluation error is
    # quadratic in the solve round-off, which keeps the descent history
    # clean at the 1e-12 level the guard below enforces.
    current = variational_compliance(unit_problem, profile, theta_hat)
    history = [
        InnerIteration(
            compliance=load_scale * current,
            area_error=abs(_face_integral(values, dx) - target_area) / target_area,
            max_change=math.inf,
        )
    ]

    lam = math.nan
    iterations = 0
    rises = 0
    for iterations in range(1, options.max_inner_iters + 1):
        dtheta = np.diff(theta_hat.values) / dx
        density = problem.k * dtheta * dtheta
        lam, new_values = _oc_step(
            values, density, target_area, floor, dx,
            options.oc_damping, options.move_limit,
        )
        area_error = abs(_face_integral(new_values, dx) - target_area) / target_area
        if area_error > options.lambda_bisect_tol:
            raise OptimizationError(
                f"multiplier bisection left the area budget unmet "
                f"(relative error {area_error:g})"
            )
        max_change = float(np.max(np.abs(new_values - values) / values))

        values = new_values
        profile = ThicknessProfile(mesh, values)
        theta_hat = solve_temperature(unit_problem, profile)
        updated = variational_compliance(unit_problem, profile, theta_hat)
        history.append(InnerIteration(load_scale * updated, area_error, max_change))

        if updated > current + DESCENT_SLACK * abs(current):
            rises += 1
            if rises > 3:
                tail = ", ".join(f"{h.compliance:.17g}" for h in history[-5:])
                raise OptimizationError(
                    f"compliance failed to decrease for {rises} consecutive "
                    f"iterations (last values: {tail})"
                )
        else:
            rises = 0
        current = updated

        if max_change <= options.converge_tol:
            break

    return OptimizationReport(
        profile=profile,
        length=mesh.length,
        compliance=load_scale * current,
        lagrange_multiplier=load_scale * lam,
        inner_iterations=iterations,
        history=tuple(history),
        optimality=evaluate_profile_optimality(problem, profile),
    )


def _golden_section(
    f: Callable[[float], float], lo: float, hi: float, tol: float
) -> float:
    """Golden-section minimum of a unimodal f on [lo, hi] to width tol."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc = f(c)
    fd = f(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


def optimize_length(
    problem: FinProblem, options: OptimizerOptions = OptimizerOptions()
) -> OptimizationReport:
    """Minimize compliance over the fin length with nested OC inner solves.

    The default bracket spans 0.3 to 3 times the closed-form optimal
    length; that value seeds the bracket and nothing else.
    """
    if options.length_bracket is not None:
        lo, hi = options.length_bracket
    else:
        reference = analytic.optimal_length(problem)
        lo, hi = 0.3 * reference, 3.0 * reference
    tol = options.length_tol if options.length_tol is not None else 1e-3 * (hi - lo)

    def inner(length: float) -> OptimizationReport:
        return optimize_profile(problem, length, options)

    edge_lo = inner(lo).compliance
    edge_hi = inner(hi).compliance

    best_length = _golden_section(lambda L: inner(L).compliance, lo, hi, tol)
    report = inner(best_length)
    if report.compliance >= min(edge_lo, edge_hi):
        raise OptimizationError(
            "length bracket holds no interior compliance minimum: "
            f"compliance {edge_lo:.17g} at {lo:.17g}, {edge_hi:.17g} at {hi:.17g}, "
            f"{report.compliance:.17g} at {best_length:.17g}"
        )
    return report


def evaluate_profile_optimality(
    problem: FinProblem, profile: ThicknessProfile
) -> OptimalityCheck:
    """Compute the optimality residual metrics for one profile.

    Faces in the tip exclusion zone are left out of the gradient-constancy
    and thickness-slope metrics; the thickness floor regularizes that
    neighborhood, so the pointwise conditions cannot hold there.
    """
    mesh = profile.mesh
    theta = solve_temperature(problem, profile)
    adjoint = solve_adjoint(problem, profile)

    tiny = float(np.finfo(np.float64).tiny)
    root = max(abs(theta.root_value), tiny)
    selfadjoint_gap = float(np.max(np.abs(adjoint.values - theta.values))) / root

    dx = mesh.dx
    slopes = np.diff(theta.values) / dx
    inside = interior_face_mask(mesh)
    picked = slopes[inside]
    mean_slope = float(np.mean(picked))
    if mean_slope == 0.0:
        grad_cv = math.inf
    else:
        grad_cv = float(np.std(picked)) / abs(mean_slope)

    # dt/dx is centered between faces, i.e. on interior nodes.
    dtdx = np.diff(profile.values) / dx
    positions = mesh.nodes[1:-1]
    window = positions <= (1.0 - TIP_EXCLUSION) * mesh.length
    xs = positions[window] - mesh.length
    ys = dtdx[window]
    design = np.column_stack([xs, np.ones_like(xs)])
    coeffs, *_ = np.linalg.lstsq(design, ys, rcond=None)
    fitted = design @ coeffs
    scale = np.linalg.norm((2.0 * problem.h / problem.k) * xs)
    residual = float(np.linalg.norm(ys - fitted)) / max(float(scale), tiny)

    return OptimalityCheck(
        grad_temp_cv=grad_cv,
        thickness_grad_linfit_residual=residual,
        tip_temp_ratio=abs(theta.tip_value) / root,
        selfadjoint_gap=selfadjoint_gap,
        grad_temp_mean=mean_slope,
        thickness_slope=float(coeffs[0]),
    )


def verify_optimality(report: OptimizationReport, problem: FinProblem) -> OptimalityCheck:
    """Recompute the optimality metrics for a finished report."""
    return evaluate_profile_optimality(problem, report.profile)
