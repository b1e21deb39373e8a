"""Characteristic scales and the adaptive magnitude estimate.

The solver works with tractions divided by a characteristic stress built from
a characteristic displacement guess. When that guess is poor, the contact
residuals and indicators live on a wildly wrong magnitude; the adaptive scale
estimates the actual magnitude from the current iterate (a high-order mean of
per-cell contributions, so large cells dominate without the max's
discontinuity) and is frozen during each line search.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contact import CellContactState, ContactParameters, gap

__all__ = [
    "CharacteristicScales",
    "AdaptiveScale",
    "cell_scale_estimate",
    "p_mean_scale",
]

SCALE_FLOOR = 1e-8
SCALE_CEILING = 1e8


@dataclass(frozen=True)
class CharacteristicScales:
    """Scales induced by a characteristic displacement over a domain."""

    displacement: float          # u_c, meters
    domain_length: float = 1.0   # meters
    youngs_modulus: float = 5e6  # Pa

    def __post_init__(self):
        if self.displacement <= 0.0 or self.domain_length <= 0.0 or self.youngs_modulus <= 0.0:
            raise ValueError("characteristic quantities must be positive")

    @property
    def stress(self) -> float:
        return self.youngs_modulus * self.displacement / self.domain_length

    @property
    def complementarity_weight(self) -> float:
        """Weight pairing jumps with scaled tractions, 1 / displacement."""
        return 1.0 / self.displacement


@dataclass(frozen=True)
class AdaptiveScale:
    """A frozen magnitude estimate used by the scaled indicator variant.

    ``frozen_from_iteration`` records which accepted iterate produced the
    value; the estimate computed at the end of iteration k applies during
    iteration k+1's line search.
    """

    value: float
    exponent: float = 5.0
    frozen_from_iteration: int = -1

    def __post_init__(self):
        if not SCALE_FLOOR <= self.value <= SCALE_CEILING:
            raise ValueError("adaptive scale outside its admissible bounds")


def cell_scale_estimate(state: CellContactState, params: ContactParameters,
                        weight: float) -> float:
    """Magnitude contribution of one cell.

    Sum of the scaled traction norm and the weighted norm of the jump with
    the dilation gap removed along the normal. Both terms are dimensionless
    and O(1) when the characteristic displacement is well chosen.
    """
    traction_norm = float(np.sqrt(
        state.normal_traction ** 2 + float(state.tangential_traction @ state.tangential_traction)
    ))
    g = gap(state.tangential_jump, params.dilation_angle)
    jump_norm = float(np.sqrt(
        (state.normal_jump - g) ** 2 + float(state.tangential_jump @ state.tangential_jump)
    ))
    return traction_norm + weight * jump_norm


def p_mean_scale(values, exponent: float = 5.0) -> float:
    """Power mean of per-cell estimates, clamped to [1e-8, 1e8].

    The mean sits between the smallest and largest input and approaches the
    maximum as the exponent grows, so a few large cells set the scale without
    a hard max.
    """
    vals = np.asarray(values, dtype=float)
    if vals.size == 0:
        raise ValueError("need at least one cell estimate")
    if np.any(vals < 0.0) or not np.all(np.isfinite(vals)):
        raise ValueError("cell estimates must be finite and nonnegative")
    mean = float(np.mean(vals ** exponent) ** (1.0 / exponent))
    return float(min(max(mean, SCALE_FLOOR), SCALE_CEILING))
