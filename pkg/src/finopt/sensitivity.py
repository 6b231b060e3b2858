"""Adjoint-based sensitivity of compliance to the thickness profile.

The compliance C = q0 * theta(0) of the discrete model A theta = b has the
adjoint system A^T w = dC/dtheta = q0 * e0.  Because the fin operator is
self-adjoint and the adjoint load coincides with the heat input, w equals
theta; the code still assembles and solves the adjoint on its own so that
the identity is observed rather than assumed.

Each face value enters the matrix only through its own link conductance,
so the gradient is diagonal in the face index:

    dC/dt_face = -k * (dtheta/dx) * (dw/dx) * dx   per face,

nonpositive for any admissible profile (more material never hurts).  At
the optimum the density k (dtheta/dx)^2 is the same constant on every face
away from the regularized tip; that constant is the area constraint's
multiplier, reported here as lagrange_shift.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError, SolverError
from .mesh import Mesh, TemperatureField, ThicknessProfile
from .problem import FinProblem
from .solver import compliance, solve_temperature, thickness_floor

__all__ = [
    "AdjointField",
    "SensitivityField",
    "compliance_gradient",
    "finite_difference_gradient",
    "interior_face_mask",
    "solve_adjoint",
]

#: Fraction of the length next to the tip excluded from optimality metrics;
#: the thickness floor regularizes that neighborhood, so pointwise
#: optimality conditions are not meaningful there.
TIP_EXCLUSION = 0.1


def interior_face_mask(mesh: Mesh, tip_fraction: float = TIP_EXCLUSION) -> np.ndarray:
    """Boolean mask of faces outside the tip exclusion zone."""
    return mesh.faces <= (1.0 - tip_fraction) * mesh.length


@dataclass(frozen=True, eq=False)
class AdjointField:
    """Adjoint variable w at the mesh nodes."""

    mesh: Mesh
    values: np.ndarray = field(repr=False)

    @property
    def root_value(self) -> float:
        return float(self.values[0])


def _assemble_adjoint_system(
    problem: FinProblem, profile: ThicknessProfile
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Assemble the transposed operator and the objective-derivative load.

    Built by accumulating link conductances node by node, a separate code
    path from the primal assembly; the operator it produces must come out
    symmetric, which the caller checks against the primal matrix shape.
    """
    mesh = profile.mesh
    conductance = problem.k * profile.values / mesh.dx

    diag = 2.0 * problem.h * np.array(mesh.node_weights)
    diag[:-1] += conductance
    diag[1:] += conductance
    off = -conductance

    load = np.zeros(mesh.n_nodes, dtype=np.float64)
    load[0] = problem.q0  # dC/dtheta_0 for C = q0 * theta_0
    return diag, off, load


def solve_adjoint(problem: FinProblem, profile: ThicknessProfile) -> AdjointField:
    """Solve the adjoint system for the compliance objective."""
    mesh = profile.mesh
    floor = thickness_floor(problem, mesh.length)
    if float(np.min(profile.values)) < floor:
        raise SolverError(
            f"profile has faces below the thickness floor {floor:g}; "
            "clip it before solving"
        )
    diag, off, load = _assemble_adjoint_system(problem, profile)
    try:
        w = kernels.solve_spd_tridiagonal(diag, off, load)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"adjoint solve failed: {exc}") from exc
    if not np.all(np.isfinite(w)):
        raise SolverError("adjoint solve produced non-finite values")
    return AdjointField(mesh, w)


@dataclass(frozen=True, eq=False)
class SensitivityField:
    """Per-face compliance gradient plus the implied constraint multiplier.

    values[f] is dC/dt at face f (nonpositive); lagrange_shift is the mean
    gradient density k (dtheta/dx)(dw/dx) over the faces outside the tip
    exclusion zone, the constant the density equals at an optimum.
    """

    mesh: Mesh
    values: np.ndarray = field(repr=False)
    lagrange_shift: float

    @property
    def density(self) -> np.ndarray:
        """Gradient density per unit thickness and length: -values / dx."""
        d = -self.values / self.mesh.dx
        d.flags.writeable = False
        return d


def compliance_gradient(
    problem: FinProblem,
    profile: ThicknessProfile,
    primal: TemperatureField,
    adjoint: AdjointField,
) -> SensitivityField:
    """Exact gradient of discrete compliance with respect to face thickness."""
    mesh = profile.mesh
    if primal.mesh != mesh or adjoint.mesh != mesh:
        raise DomainError("profile, primal, and adjoint must share one mesh")
    dx = mesh.dx
    dtheta = np.diff(primal.values) / dx
    dw = np.diff(adjoint.values) / dx
    density = problem.k * dtheta * dw
    values = -(density * dx)
    inside = interior_face_mask(mesh)
    shift = float(np.mean(density[inside]))
    return SensitivityField(mesh=mesh, values=values, lagrange_shift=shift)


def finite_difference_gradient(
    problem: FinProblem,
    profile: ThicknessProfile,
    face_index: int,
    step: float,
) -> float:
    """Central-difference check value for one face of the gradient.

    Symmetric in the sign of step by construction.  Both perturbed
    profiles must stay at or above the thickness floor.
    """
    mesh = profile.mesh
    if not -mesh.n_cells <= face_index < mesh.n_cells:
        raise DomainError(f"face index {face_index} out of range")
    if not (np.isfinite(step) and step != 0.0):
        raise DomainError(f"step must be a nonzero finite number, got {step}")
    floor = thickness_floor(problem, mesh.length)
    if profile.values[face_index] - abs(step) < floor:
        raise DomainError(
            "perturbed profile would drop below the thickness floor; "
            "use a smaller step"
        )

    plus = np.array(profile.values)
    plus[face_index] += step
    minus = np.array(profile.values)
    minus[face_index] -= step
    c_plus = compliance(problem, solve_temperature(problem, profile.with_values(plus)))
    c_minus = compliance(problem, solve_temperature(problem, profile.with_values(minus)))
    return (c_plus - c_minus) / (2.0 * step)
