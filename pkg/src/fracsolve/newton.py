"""Semismooth Newton driver with pluggable step-length strategies.

Each iteration assembles the residual and generalized Jacobian once, solves
the linear system by direct factorization, picks a step length with the
configured strategy, and applies the update. Convergence is declared on the
root-mean-square norm of either the increment or the residual; divergence on
non-finite values, a residual blow-up past a guard factor, or a failed
factorization.

Models are duck-typed: they provide ``residual(x)``, ``jacobian(x)`` and
``initial_guess()``. Contact-aware models additionally expose their cell
states, contact parameters and fracture partition, which the constraint
searches and the adaptive magnitude estimate consume; models without these
hooks simply run with full steps under the constraint strategies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dataclass_field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .contact import ContactRegime, classify_regime
from .indicators import evaluate_field, reference_mask
from .linesearch import (
    LineSearchConfig,
    LineSearchOutcome,
    SearchDiverged,
    Strategy,
    search_constraint,
    search_none,
    search_residual,
)
from .scaling import AdaptiveScale, cell_scale_estimate, p_mean_scale

__all__ = [
    "SolveStatus",
    "CriterionKind",
    "ConvergenceCriterion",
    "NewtonOptions",
    "NewtonReport",
    "LinearSolveFailed",
    "linear_solve",
    "solve",
]


class SolveStatus(enum.Enum):
    CONVERGED = "Converged"
    NO_CONVERGENCE = "NC"
    DIVERGED = "Div"


class CriterionKind(enum.Enum):
    INCREMENT = "increment"
    RESIDUAL = "residual"


@dataclass(frozen=True)
class ConvergenceCriterion:
    kind: CriterionKind = CriterionKind.INCREMENT
    tolerance: float = 1e-10

    def __post_init__(self):
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class NewtonOptions:
    max_iterations: int = 100
    criterion: ConvergenceCriterion = ConvergenceCriterion()
    # A bare Strategy is accepted and wrapped in a default config.
    line_search: LineSearchConfig = dataclass_field(default_factory=LineSearchConfig)
    divergence_factor: float = 1e10
    # Diagnostics: pin the adaptive scale at 1 (reproduces the constant
    # variant bitwise) or recompute the tangential mask at every trial point
    # instead of freezing it at the reference iterate.
    force_unit_scale: bool = False
    mask_at_trial: bool = False

    def __post_init__(self):
        if isinstance(self.line_search, Strategy):
            object.__setattr__(self, "line_search",
                               LineSearchConfig(strategy=self.line_search))
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")


@dataclass
class NewtonReport:
    status: SolveStatus
    iterations: int
    criterion: ConvergenceCriterion
    residual_norms: list[float] = dataclass_field(default_factory=list)
    increment_norms: list[float] = dataclass_field(default_factory=list)
    alphas: list[float] = dataclass_field(default_factory=list)
    regime_history: list[tuple[int, int, int]] = dataclass_field(default_factory=list)
    scale_history: list[float] = dataclass_field(default_factory=list)
    ls_evaluations: int = 0
    tightening_rounds: int = 0
    divergence_reason: str | None = None
    x: np.ndarray | None = None

    @property
    def final_norm(self) -> float:
        seq = (self.increment_norms if self.criterion.kind is CriterionKind.INCREMENT
               else self.residual_norms)
        return seq[-1] if seq else float("inf")


class LinearSolveFailed(RuntimeError):
    pass


def linear_solve(matrix, rhs: np.ndarray) -> np.ndarray:
    """Direct factorization solve with a residual check.

    One step of iterative refinement keeps the backward error near machine
    level; the solution is rejected (singular or ill-conditioned system) when
    the final residual exceeds 1e-10 of the right-hand side norm.
    """
    rhs = np.asarray(rhs, dtype=float)
    try:
        if sp.issparse(matrix):
            factor = spla.splu(sp.csc_matrix(matrix))
            solution = factor.solve(rhs)
            solution = solution + factor.solve(rhs - matrix @ solution)
        else:
            dense = np.asarray(matrix, dtype=float)
            solution = np.linalg.solve(dense, rhs)
            solution = solution + np.linalg.solve(dense, rhs - dense @ solution)
    except (RuntimeError, np.linalg.LinAlgError) as err:
        raise LinearSolveFailed(str(err)) from err
    if not np.all(np.isfinite(solution)):
        raise LinearSolveFailed("non-finite solution from factorization")
    residual = float(np.linalg.norm(matrix @ solution - rhs))
    if residual > 1e-10 * float(np.linalg.norm(rhs)) + 1e-300:
        raise LinearSolveFailed(f"factorization residual too large ({residual:.3e})")
    return solution


def _has_contact(model) -> bool:
    return all(hasattr(model, name) for name in
               ("contact_states", "contact_parameters", "complementarity_weight",
                "fracture_cells"))


def _regime_census(model, x: np.ndarray) -> tuple[int, int, int]:
    params = model.contact_parameters
    weight = model.complementarity_weight
    counts = {ContactRegime.OPEN: 0, ContactRegime.STICKING: 0, ContactRegime.SLIDING: 0}
    for state in model.contact_states(x):
        counts[classify_regime(state, params, weight)] += 1
    return (counts[ContactRegime.OPEN], counts[ContactRegime.STICKING],
            counts[ContactRegime.SLIDING])


def _adaptive_scale(model, x: np.ndarray, iteration: int) -> AdaptiveScale:
    params = model.contact_parameters
    weight = model.complementarity_weight
    estimates = [cell_scale_estimate(s, params, weight) for s in model.contact_states(x)]
    return AdaptiveScale(p_mean_scale(estimates), frozen_from_iteration=iteration)


def _run_search(model, x: np.ndarray, step: np.ndarray, residual_now: np.ndarray,
                options: NewtonOptions, scale: AdaptiveScale) -> LineSearchOutcome:
    cfg = options.line_search
    if cfg.strategy is Strategy.NONE:
        return search_none(cfg)

    if cfg.strategy is Strategy.RESIDUAL:
        def objective(alpha: float) -> float:
            r = model.residual(x + alpha * step)
            return 0.5 * float(r @ r)
        reference = 0.5 * float(residual_now @ residual_now)
        return search_residual(objective, reference, cfg)

    # Constraint strategies; contactless models just take the full step.
    if not _has_contact(model):
        return search_none(cfg)
    params = model.contact_parameters
    weight = model.complementarity_weight
    mask = reference_mask(model.contact_states(x), params, weight)

    def evaluator(alpha: float):
        states = model.contact_states(x + alpha * step)
        m = reference_mask(states, params, weight) if options.mask_at_trial else mask
        return evaluate_field(states, params, weight, m)

    used_scale = scale.value if cfg.strategy is Strategy.CONSTRAINT_ADAPTIVE else 1.0
    return search_constraint(evaluator, model.fracture_cells(), cfg, scale=used_scale)


def solve(model, x0: np.ndarray | None = None,
          options: NewtonOptions | None = None) -> NewtonReport:
    """Run the Newton iteration until convergence, divergence or the cap."""
    options = options or NewtonOptions()
    criterion = options.criterion
    x = np.array(model.initial_guess() if x0 is None else x0, dtype=float)
    sqrt_n = float(np.sqrt(x.size))

    contact = _has_contact(model)
    adapt = (options.line_search.strategy is Strategy.CONSTRAINT_ADAPTIVE
             and contact and not options.force_unit_scale)
    scale = AdaptiveScale(1.0, frozen_from_iteration=-1)

    report = NewtonReport(status=SolveStatus.NO_CONVERGENCE, iterations=0,
                          criterion=criterion, scale_history=[scale.value])

    def diverged(reason: str) -> NewtonReport:
        report.status = SolveStatus.DIVERGED
        report.divergence_reason = reason
        report.x = x
        return report

    residual = model.residual(x)
    norm0 = float(np.linalg.norm(residual))
    if not np.isfinite(norm0):
        return diverged("non-finite initial residual")
    report.residual_norms.append(norm0 / sqrt_n)
    if criterion.kind is CriterionKind.RESIDUAL and norm0 / sqrt_n < criterion.tolerance:
        report.status = SolveStatus.CONVERGED
        report.x = x
        return report

    for iteration in range(1, options.max_iterations + 1):
        jacobian = model.jacobian(x)
        try:
            step = linear_solve(jacobian, -residual)
        except LinearSolveFailed as err:
            return diverged(f"linear solve failed: {err}")

        increment_norm = float(np.linalg.norm(step)) / sqrt_n
        report.increment_norms.append(increment_norm)

        try:
            outcome = _run_search(model, x, step, residual, options, scale)
        except SearchDiverged as err:
            return diverged(str(err))
        report.alphas.append(outcome.alpha)
        report.ls_evaluations += outcome.evaluations
        report.tightening_rounds += outcome.tightening_rounds

        x = x + outcome.alpha * step
        report.iterations = iteration
        if contact:
            report.regime_history.append(_regime_census(model, x))

        residual = model.residual(x)
        norm = float(np.linalg.norm(residual))
        if not np.isfinite(norm) or not np.all(np.isfinite(x)):
            return diverged("non-finite residual or iterate")
        if norm > options.divergence_factor * max(norm0, 1e-300):
            return diverged(f"residual grew past {options.divergence_factor:g} of initial")
        report.residual_norms.append(norm / sqrt_n)

        if adapt:
            scale = _adaptive_scale(model, x, iteration)
        report.scale_history.append(scale.value)

        if criterion.kind is CriterionKind.INCREMENT and increment_norm < criterion.tolerance:
            report.status = SolveStatus.CONVERGED
            break
        if criterion.kind is CriterionKind.RESIDUAL and norm / sqrt_n < criterion.tolerance:
            report.status = SolveStatus.CONVERGED
            break

    report.x = x
    return report
