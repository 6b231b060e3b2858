"""Finite-volume solution of the fin conduction-convection balance.

Flux form on the staggered mesh: the conductance of the link between
nodes i and i+1 is k * t_face / dx, convection 2h is lumped over each
node's control volume (trapezoid weights, half cells at the ends), the
root carries the prescribed heat input q0 and the tip is insulated.  The
result is a symmetric positive definite tridiagonal system solved directly
by the kernel backend.

Summing the discrete equations telescopes the conductive fluxes away, so
q0 = 2h * sum(theta_i * w_i) holds as a discrete identity; the energy
balance residual below measures only round-off of the direct solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import DomainError, SolverError
from .mesh import Mesh, TemperatureField, ThicknessProfile
from .problem import FinProblem

__all__ = [
    "ConvergenceStudy",
    "assemble_fin_system",
    "compliance",
    "energy_balance_residual",
    "refine_and_estimate_order",
    "solve_temperature",
    "thickness_floor",
    "variational_compliance",
]

#: Relative thickness floor, in units of (h/k) L^2 (the natural root
#: thickness scale): keeps pinched tips from making the system singular.
FLOOR_RATIO = 1e-6


def thickness_floor(problem: FinProblem, length: float) -> float:
    """Minimum face thickness admitted by the discrete system."""
    if not length > 0.0:
        raise DomainError(f"length must be positive, got {length}")
    return FLOOR_RATIO * (problem.h / problem.k) * length * length


def assemble_fin_system(
    problem: FinProblem, profile: ThicknessProfile
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Build (diag, off, rhs) of the SPD tridiagonal system for theta."""
    mesh = profile.mesh
    dx = mesh.dx
    conductance = problem.k * profile.values / dx
    convection = 2.0 * problem.h * mesh.node_weights

    diag = np.empty(mesh.n_nodes, dtype=np.float64)
    diag[0] = conductance[0] + convection[0]
    diag[1:-1] = (conductance[:-1] + conductance[1:]) + convection[1:-1]
    diag[-1] = conductance[-1] + convection[-1]
    off = -conductance

    rhs = np.zeros(mesh.n_nodes, dtype=np.float64)
    rhs[0] = problem.q0
    return diag, off, rhs


def solve_temperature(problem: FinProblem, profile: ThicknessProfile) -> TemperatureField:
    """Solve for the excess temperature on the profile's mesh.

    Raises SolverError if any face is below the thickness floor or the
    direct solve fails; never returns NaNs.
    """
    mesh = profile.mesh
    floor = thickness_floor(problem, mesh.length)
    if float(np.min(profile.values)) < floor:
        raise SolverError(
            f"profile has faces below the thickness floor {floor:g}; "
            "clip it before solving"
        )
    diag, off, rhs = assemble_fin_system(problem, profile)
    try:
        theta = kernels.solve_spd_tridiagonal(diag, off, rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"direct solve failed: {exc}") from exc
    if not np.all(np.isfinite(theta)):
        raise SolverError("direct solve produced non-finite temperatures")
    return TemperatureField(mesh, theta)


def compliance(problem: FinProblem, field: TemperatureField) -> float:
    """Thermal compliance q0 * theta(0): the objective the optimizer minimizes."""
    return problem.q0 * field.root_value


def variational_compliance(
    problem: FinProblem, profile: ThicknessProfile, field: TemperatureField
) -> float:
    """Compliance recovered from the energy functional, 2 b.theta - theta.A.theta.

    Equal to compliance() when theta solves the system exactly; for a
    computed solution its error is quadratic in the solve round-off rather
    than linear, so successive values can be compared down to ~1e-15
    relative.  The quadratic form is summed term by term (every term is
    nonnegative) with exact accumulation.
    """
    if field.mesh != profile.mesh:
        raise DomainError("temperature field and profile live on different meshes")
    mesh = profile.mesh
    theta = field.values
    conduction = (problem.k * profile.values / mesh.dx) * np.square(np.diff(theta))
    convection = (2.0 * problem.h * mesh.node_weights) * np.square(theta)
    energy = math.fsum(conduction.tolist()) + math.fsum(convection.tolist())
    return 2.0 * problem.q0 * field.root_value - energy


def energy_balance_residual(
    problem: FinProblem, field: TemperatureField, profile: ThicknessProfile
) -> float:
    """|q0 - total convective loss| / max(q0, tiny), from the discrete identity.

    Zero heat input gives a zero field and, by the 0/tiny convention, a
    zero residual.
    """
    if field.mesh != profile.mesh:
        raise DomainError("temperature field and profile live on different meshes")
    shed = 2.0 * problem.h * float(np.sum(field.values * field.mesh.node_weights))
    return abs(problem.q0 - shed) / max(problem.q0, float(np.finfo(np.float64).tiny))


@dataclass(frozen=True)
class ConvergenceStudy:
    """Observed-order estimate from a mesh refinement sequence.

    order is None when the data cannot support an estimate (non-monotone
    errors, identical values across meshes); inconclusive says why in note.
    """

    n_cells: tuple[int, ...]
    values: tuple[float, ...]
    errors: tuple[float, ...] | None
    order: float | None
    inconclusive: bool
    note: str = ""


def refine_and_estimate_order(
    problem: FinProblem,
    profile_generator: Callable[[int], ThicknessProfile],
    field_extractor: Callable[[TemperatureField], float] = lambda f: f.root_value,
    n_cells: Sequence[int] = (250, 500, 1000),
    exact: float | None = None,
) -> ConvergenceStudy:
    """Estimate the observed convergence order of a scalar field functional.

    profile_generator(n) must return a profile on an n-cell mesh of a fixed
    length.  With a known exact value the order is the least-squares slope
    of log error versus log dx; without one, a Richardson-style estimate
    from successive differences (requiring a constant refinement ratio).
    """
    ns = tuple(int(n) for n in n_cells)
    if len(ns) < 3:
        raise DomainError("need at least three mesh sizes")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise DomainError("mesh sizes must be strictly increasing")

    values = []
    for n in ns:
        profile = profile_generator(n)
        if profile.mesh.n_cells != n:
            raise DomainError(
                f"profile generator returned {profile.mesh.n_cells} cells, expected {n}"
            )
        values.append(field_extractor(solve_temperature(problem, profile)))
    values = tuple(float(v) for v in values)

    if exact is not None:
        errors = tuple(abs(v - exact) for v in values)
        if any(e == 0.0 for e in errors):
            return ConvergenceStudy(
                ns, values, errors, None, True, "error vanished at some mesh"
            )
        if any(b >= a for a, b in zip(errors, errors[1:])):
            return ConvergenceStudy(
                ns, values, errors, None, True, "errors are not monotonically decreasing"
            )
        slope = np.polyfit(np.log(np.asarray(ns, dtype=np.float64)), np.log(errors), 1)[0]
        return ConvergenceStudy(ns, values, errors, float(-slope), False)

    ratios = [b / a for a, b in zip(ns, ns[1:])]
    if any(abs(r - ratios[0]) > 1e-12 * ratios[0] for r in ratios):
        raise DomainError("Richardson estimate needs a constant refinement ratio")
    diffs = [a - b for a, b in zip(values, values[1:])]
    if any(d == 0.0 for d in diffs):
        return ConvergenceStudy(
            ns, values, None, None, True, "values identical across meshes"
        )
    if any(d1 * d2 <= 0.0 for d1, d2 in zip(diffs, diffs[1:])):
        return ConvergenceStudy(
            ns, values, None, None, True, "successive differences change sign"
        )
    if any(abs(d2) >= abs(d1) for d1, d2 in zip(diffs, diffs[1:])):
        return ConvergenceStudy(
            ns, values, None, None, True, "successive differences are not shrinking"
        )
    orders = [
        np.log(abs(d1 / d2)) / np.log(ratios[0])
        for d1, d2 in zip(diffs, diffs[1:])
    ]
    return ConvergenceStudy(ns, values, None, float(np.mean(orders)), False)
