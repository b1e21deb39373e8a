"""Globalization strategies for the semismooth Newton driver.

Four strategies share one interface: accept the full step, minimize a cubic
model of the residual norm along the step, or damp the step so that per-cell
contact-state transitions stay controlled. The constraint-oriented searches
never evaluate the residual; they work entirely on the cheap state indicators,
sampling them along the ray, fitting monotone cubics, and solving for the
step length at which a transitioning cell overshoots its branch boundary by
exactly the transition tolerance. When too many cells of one fracture still
transition at the damped step, the tolerance is halved and the roots are
recomputed from the cached fits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .indicators import IndicatorField, transition_values
from .interpolation import MonotoneCubic, find_minimum, find_root, fit

__all__ = [
    "Strategy",
    "LineSearchConfig",
    "LineSearchOutcome",
    "SearchDiverged",
    "search_none",
    "search_residual",
    "search_constraint",
]


class Strategy(enum.Enum):
    """How the Newton step length is chosen."""

    NONE = "none"
    RESIDUAL = "residual"
    CONSTRAINT_CONST = "constraint-const"
    CONSTRAINT_ADAPTIVE = "constraint-adaptive"


class SearchDiverged(RuntimeError):
    """Raised when a search cannot produce any usable step length."""


@dataclass(frozen=True)
class LineSearchConfig:
    strategy: Strategy = Strategy.CONSTRAINT_ADAPTIVE
    transition_tolerance: float = 0.3   # overshoot allowed past a branch boundary
    transition_fraction: float = 0.2    # tolerated fraction of transitioning cells per fracture
    sample_count: int = 5               # samples along the ray, endpoints included
    max_tightenings: int = 10
    alpha_min: float = 1e-3

    def __post_init__(self):
        if self.transition_tolerance <= 0.0:
            raise ValueError("transition tolerance must be positive")
        if not 0.0 < self.transition_fraction < 1.0:
            raise ValueError("transition fraction must lie in (0, 1)")
        if self.sample_count < 2:
            raise ValueError("need at least two samples along the ray")
        if not 0.0 < self.alpha_min <= 1.0:
            raise ValueError("alpha_min must lie in (0, 1]")
        if self.max_tightenings < 0:
            raise ValueError("max_tightenings must be nonnegative")


@dataclass
class LineSearchOutcome:
    alpha: float
    evaluations: int = 0
    tightening_rounds: int = 0
    final_tolerance: float | None = None
    transitions_per_fracture: tuple[int, ...] = ()
    diagnostics: dict = field(default_factory=dict)


def search_none(config: LineSearchConfig) -> LineSearchOutcome:
    """Always take the full step."""
    return LineSearchOutcome(alpha=1.0)


def search_residual(objective, reference_value: float,
                    config: LineSearchConfig) -> LineSearchOutcome:
    """Minimize a monotone-cubic model of the residual objective on the ray.

    ``objective(alpha)`` returns half the squared residual norm at the trial
    point; ``reference_value`` is its already-known value at alpha = 0, so the
    search spends exactly ``sample_count`` extra residual evaluations.
    Non-finite samples are excluded and the minimization is restricted to the
    largest finite sampled step.
    """
    trial_alphas = np.linspace(config.alpha_min, 1.0, config.sample_count)
    samples = [(0.0, float(reference_value))]
    evaluations = 0
    for a in trial_alphas:
        v = float(objective(float(a)))
        evaluations += 1
        if np.isfinite(v):
            samples.append((float(a), v))
    if len(samples) < 2:
        raise SearchDiverged("residual objective non-finite at every trial step")

    spline = fit(samples)
    largest_finite = samples[-1][0]
    alpha, value = find_minimum(spline, (config.alpha_min, largest_finite))
    alpha = float(min(max(alpha, config.alpha_min), 1.0))
    return LineSearchOutcome(
        alpha=alpha,
        evaluations=evaluations,
        diagnostics={"samples": samples, "model_minimum": value},
    )


def _cell_spline(grid: np.ndarray, samples: np.ndarray) -> MonotoneCubic | None:
    """Fit one cell-family indicator profile; None if samples are unusable."""
    if not np.all(np.isfinite(samples)):
        return None
    return fit(np.column_stack([grid, samples]))


def _fallback_alpha(grid: np.ndarray, samples: np.ndarray, reference: float,
                    alpha_min: float) -> float:
    # Largest sampled step whose indicator still has the reference sign.
    sgn = np.sign(reference)
    ok = np.isfinite(samples) & (np.sign(samples) == sgn)
    if np.any(ok):
        return float(grid[np.where(ok)[0][-1]])
    return alpha_min


def search_constraint(indicator_evaluator, fracture_cells, config: LineSearchConfig,
                      scale: float = 1.0) -> LineSearchOutcome:
    """Damp the step so contact-state transitions stay controlled.

    ``indicator_evaluator(alpha)`` returns the unscaled IndicatorField at the
    trial point; the search divides by the frozen ``scale`` (1 for the
    constant variant, so both constraint strategies share this exact code
    path). ``fracture_cells`` partitions the cell indices by fracture.

    A cell-family whose transition indicator at the full step exceeds the
    tolerance contributes the smallest root of the shifted indicator model;
    the global step is the minimum over those roots. The tolerance is halved
    while any fracture has more transitioning cells at the damped step than
    max(1, fraction * cells).
    """
    delta0 = config.transition_tolerance
    gamma = config.transition_fraction

    fields: dict[float, IndicatorField] = {}
    evaluations = 0

    def field_at(alpha: float) -> IndicatorField:
        nonlocal evaluations
        key = float(alpha)
        if key not in fields:
            fields[key] = indicator_evaluator(key).rescaled(scale)
            evaluations += 1
        return fields[key]

    ref = field_at(0.0)
    full = field_at(1.0)
    trans_full = {
        "normal": transition_values(ref.normal, full.normal),
        "tangential": transition_values(ref.tangential, full.tangential),
    }

    grid = np.linspace(0.0, 1.0, config.sample_count)
    grid_values: dict[str, np.ndarray] | None = None  # (family -> samples per cell, per alpha)
    splines: dict[tuple[str, int], MonotoneCubic | None] = {}

    def sampled_values() -> dict[str, np.ndarray]:
        nonlocal grid_values
        if grid_values is None:
            per_alpha = [field_at(a) for a in grid]
            grid_values = {
                "normal": np.column_stack([f.normal for f in per_alpha]),
                "tangential": np.column_stack([f.tangential for f in per_alpha]),
            }
        return grid_values

    delta = delta0
    rounds = 0
    candidates: list[float] = []
    while True:
        flagged = [
            (family, int(cell))
            for family in ("normal", "tangential")
            for cell in np.where(trans_full[family] > delta)[0]
        ]

        if not flagged:
            candidate = 1.0
        else:
            values = sampled_values()
            roots = []
            for family, cell in flagged:
                key = (family, cell)
                if key not in splines:
                    splines[key] = _cell_spline(grid, values[family][cell])
                spline = splines[key]
                reference_value = float(getattr(ref, family)[cell])
                if spline is None:
                    roots.append(_fallback_alpha(grid, values[family][cell],
                                                 reference_value, config.alpha_min))
                    continue
                shifted = spline.shifted(delta * np.sign(reference_value))
                root = find_root(shifted, (0.0, 1.0))
                if root is None:
                    root = _fallback_alpha(grid, values[family][cell],
                                           reference_value, config.alpha_min)
                roots.append(root)
            candidate = min(roots)

        candidates.append(candidate)
        at_candidate = field_at(candidate)
        cell_moved = (
            (transition_values(ref.normal, at_candidate.normal) > 0.0)
            | (transition_values(ref.tangential, at_candidate.tangential) > 0.0)
        )
        counts = tuple(int(np.count_nonzero(cell_moved[idx])) for idx in fracture_cells)
        crowded = any(
            n_moved > max(1.0, gamma * len(idx))
            for n_moved, idx in zip(counts, fracture_cells)
        )
        if not crowded or rounds >= config.max_tightenings:
            break
        delta *= 0.5
        rounds += 1

    alpha = float(min(max(candidate, config.alpha_min), 1.0))
    return LineSearchOutcome(
        alpha=alpha,
        evaluations=evaluations,
        tightening_rounds=rounds,
        final_tolerance=delta,
        transitions_per_fracture=counts,
        diagnostics={"flagged": len(flagged), "candidates": candidates},
    )
