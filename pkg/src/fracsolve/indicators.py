"""State indicators that measure distance to contact-regime transitions.

For each fracture cell two scalar indicators report, in the units of the
complementarity residuals, how far the cell sits from its normal
(open/closed) and tangential (stick/slide) branch boundaries. A sign change
of an indicator along a Newton direction means the cell is about to switch
regime; the transition indicator turns that into a per-cell damping signal.
The tangential indicator is masked to zero on cells whose normal indicator is
nonpositive at the reference iterate, and the mask is held fixed along the
search ray.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contact import CellContactState, ContactParameters, friction_bound, gap

__all__ = [
    "IndicatorField",
    "normal_indicator",
    "tangential_indicator",
    "transition_indicator",
    "transition_values",
    "evaluate_field",
    "reference_mask",
]


@dataclass(frozen=True)
class IndicatorField:
    """Per-cell indicator values for one trial point along a search ray.

    ``tangential`` is exactly zero wherever the reference mask was inactive.
    ``scaled`` records whether the values have been divided by an adaptive
    magnitude estimate.
    """

    normal: np.ndarray
    tangential: np.ndarray
    scaled: bool = False

    def rescaled(self, scale: float) -> "IndicatorField":
        """Divide both families by a frozen positive magnitude estimate."""
        if scale <= 0.0:
            raise ValueError("scale must be positive")
        return IndicatorField(self.normal / scale, self.tangential / scale, scaled=True)


def normal_indicator(state: CellContactState, params: ContactParameters,
                     weight: float) -> float:
    """Signed distance to the open/closed branch boundary.

    Positive exactly when the penetration term in the normal complementarity
    residual is on its active (contact) branch.
    """
    g = gap(state.tangential_jump, params.dilation_angle)
    return -state.normal_traction - weight * (state.normal_jump - g)


def tangential_indicator(state: CellContactState, params: ContactParameters,
                         weight: float, reference_active: bool) -> float:
    """Signed distance to the stick/slide branch boundary.

    Positive exactly when the sliding branch is active. ``reference_active``
    is the Heaviside mask from the reference iterate: cells that were open
    there contribute exactly zero.
    """
    if not reference_active:
        return 0.0
    b = friction_bound(state.normal_traction, params.friction_coefficient)
    q = state.tangential_traction + weight * state.slip_increment
    return float(np.linalg.norm(q)) - b


def transition_indicator(reference_value: float, trial_value: float) -> float:
    """Damping signal from an indicator pair (reference, trial).

    Positive with magnitude |trial| when the sign flipped between reference
    and trial; negative when the sign persisted; zero whenever either value
    is zero (sgn(0) = 0).
    """
    return float(-np.sign(reference_value * trial_value) * abs(trial_value))


def transition_values(reference: np.ndarray, trial: np.ndarray) -> np.ndarray:
    """Vectorized transition indicator over per-cell arrays."""
    reference = np.asarray(reference, dtype=float)
    trial = np.asarray(trial, dtype=float)
    return -np.sign(reference * trial) * np.abs(trial)


def reference_mask(states, params: ContactParameters, weight: float) -> np.ndarray:
    """Heaviside mask: cells with strictly positive normal indicator."""
    return np.array([normal_indicator(s, params, weight) > 0.0 for s in states], dtype=bool)


def evaluate_field(states, params: ContactParameters, weight: float,
                   mask: np.ndarray) -> IndicatorField:
    """Evaluate both indicator families for a list of cell states.

    ``mask`` is the reference-iterate Heaviside mask; it must come from the
    same cell ordering as ``states``.
    """
    normal = np.array([normal_indicator(s, params, weight) for s in states], dtype=float)
    tangential = np.array([
        tangential_indicator(s, params, weight, bool(m)) for s, m in zip(states, mask)
    ], dtype=float)
    return IndicatorField(normal, tangential, scaled=False)
