"""Complementarity formulation of frictional contact on fracture cells.

Each fracture cell carries a scaled traction and a displacement jump, split
into one normal and two tangential components in the local frame. The contact
conditions (non-penetration with shear dilation, Coulomb friction) are written
as semismooth complementarity residuals whose roots are exactly the admissible
states, so they can sit directly inside a Newton solve. All tractions here are
dimensionless (divided by the characteristic stress); jumps stay in meters and
enter through the complementarity weight, the reciprocal characteristic
displacement.

Sign conventions: a negative normal traction is compressive; the slip
increment of a consistently sliding cell is a nonnegative multiple of the
tangential traction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ContactParameters",
    "CellContactState",
    "ContactRegime",
    "friction_bound",
    "gap",
    "normal_complementarity",
    "tangential_complementarity",
    "classify_regime",
    "contact_generalized_derivative",
]


@dataclass(frozen=True)
class ContactParameters:
    """Cell-wise contact constitutive constants."""

    friction_coefficient: float = 1.0
    dilation_angle: float = 0.0       # radians, in [0, pi/2)
    residual_aperture: float = 1e-3   # meters, hydraulic aperture at closed contact

    def __post_init__(self):
        if self.friction_coefficient < 0.0:
            raise ValueError("friction coefficient must be nonnegative")
        if not 0.0 <= self.dilation_angle < 0.5 * np.pi:
            raise ValueError("dilation angle must lie in [0, pi/2)")
        if self.residual_aperture <= 0.0:
            raise ValueError("residual aperture must be positive")


@dataclass
class CellContactState:
    """Traction and jump of one fracture cell in its local frame.

    ``normal_traction`` and ``tangential_traction`` are scaled (dimensionless);
    the jumps are physical displacements in meters. ``previous_tangential_jump``
    is the converged value of the preceding time step, so the tangential slip
    increment is ``tangential_jump - previous_tangential_jump``.
    """

    normal_traction: float
    tangential_traction: np.ndarray
    normal_jump: float
    tangential_jump: np.ndarray
    previous_tangential_jump: np.ndarray = field(default_factory=lambda: np.zeros(2))
    normal: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))

    def __post_init__(self):
        self.tangential_traction = np.asarray(self.tangential_traction, dtype=float)
        self.tangential_jump = np.asarray(self.tangential_jump, dtype=float)
        self.previous_tangential_jump = np.asarray(self.previous_tangential_jump, dtype=float)
        self.normal = np.asarray(self.normal, dtype=float)
        if abs(np.linalg.norm(self.normal) - 1.0) > 1e-12:
            raise ValueError("cell normal must have unit length")

    @property
    def slip_increment(self) -> np.ndarray:
        return self.tangential_jump - self.previous_tangential_jump


class ContactRegime(enum.Enum):
    OPEN = "open"
    STICKING = "sticking"
    SLIDING = "sliding"


def friction_bound(normal_traction: float, friction_coefficient: float) -> float:
    """Coulomb bound on the tangential traction magnitude.

    Positive only under compression; nonpositive values mean the cell cannot
    sustain any shear (open contact).
    """
    return -friction_coefficient * normal_traction


def gap(tangential_jump: np.ndarray, dilation_angle: float) -> float:
    """Dilation-induced normal gap, tan(psi) * ||tangential jump||."""
    return float(np.tan(dilation_angle) * np.linalg.norm(tangential_jump))


def normal_complementarity(state: CellContactState, params: ContactParameters,
                           weight: float) -> float:
    """Residual of the normal contact conditions.

    Zero exactly when -traction >= 0, jump - gap >= 0 and their product
    vanishes; the root set does not depend on the (positive) weight.
    """
    g = gap(state.tangential_jump, params.dilation_angle)
    reach = -state.normal_traction - weight * (state.normal_jump - g)
    return -state.normal_traction - max(0.0, reach)


def tangential_complementarity(state: CellContactState, params: ContactParameters,
                               weight: float) -> np.ndarray:
    """Residual of the Coulomb friction conditions, a 2-vector.

    On an open cell (friction bound <= 0) this is the tangential traction
    itself. On a closed cell the residual vanishes exactly for stick (zero
    slip increment, traction within the bound) and for consistent slide
    (traction at the bound, slip increment a nonnegative multiple of it).
    """
    b = friction_bound(state.normal_traction, params.friction_coefficient)
    if b <= 0.0:
        return state.tangential_traction.copy()
    q = state.tangential_traction + weight * state.slip_increment
    return state.tangential_traction * max(b, float(np.linalg.norm(q))) - b * q


def classify_regime(state: CellContactState, params: ContactParameters,
                    weight: float) -> ContactRegime:
    """Diagnostic regime label: open, sticking or sliding."""
    b = friction_bound(state.normal_traction, params.friction_coefficient)
    if b <= 0.0:
        return ContactRegime.OPEN
    q = state.tangential_traction + weight * state.slip_increment
    if float(np.linalg.norm(q)) > b:
        return ContactRegime.SLIDING
    return ContactRegime.STICKING


def contact_generalized_derivative(state: CellContactState, params: ContactParameters,
                                   weight: float) -> np.ndarray:
    """Active-branch derivative of the contact residuals, as a 3x6 block.

    Rows are (normal residual, tangential residual x2); columns are
    (normal traction, tangential traction x2, normal jump, tangential jump x2).
    At branch ties the state-change branch is selected: the penetration term in
    the normal residual at zero argument, the sliding branch at a tangential
    tie. The dilation gap is nonsmooth at zero tangential jump, where its
    subgradient is taken as zero.
    """
    F = params.friction_coefficient
    c = float(weight)
    sig_t = state.tangential_traction
    u_t = state.tangential_jump

    D = np.zeros((3, 6))

    g = gap(u_t, params.dilation_angle)
    u_t_norm = float(np.linalg.norm(u_t))
    if u_t_norm > 0.0:
        dg_dut = np.tan(params.dilation_angle) * u_t / u_t_norm
    else:
        dg_dut = np.zeros(2)

    reach = -state.normal_traction - c * (state.normal_jump - g)
    if reach >= 0.0:
        # Contact branch: residual reduces to c * (jump - gap).
        D[0, 3] = c
        D[0, 4:6] = -c * dg_dut
    else:
        D[0, 0] = -1.0

    b = friction_bound(state.normal_traction, F)
    if b <= 0.0:
        D[1:3, 1:3] = np.eye(2)
        return D

    q = sig_t + c * state.slip_increment
    q_norm = float(np.linalg.norm(q))
    if q_norm >= b:
        # Sliding branch: sig_t * ||q|| - b * q.
        q_hat = q / q_norm if q_norm > 0.0 else np.zeros(2)
        D[1:3, 0] = F * q
        D[1:3, 1:3] = q_norm * np.eye(2) + np.outer(sig_t, q_hat) - b * np.eye(2)
        D[1:3, 4:6] = c * (np.outer(sig_t, q_hat) - b * np.eye(2))
    else:
        # Sticking branch: residual reduces to -b * c * slip increment.
        D[1:3, 0] = F * c * state.slip_increment
        D[1:3, 4:6] = -b * c * np.eye(2)
    return D
