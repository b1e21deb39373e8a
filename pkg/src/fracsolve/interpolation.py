"""Shape-preserving cubic interpolation of sampled line-search profiles.

Fritsch-Carlson construction: knot slopes are limited so the interpolant is
monotone wherever the data is monotone (zero slope at local extrema of the
data, magnitudes capped at three times the adjacent secants). The pieces are
plain cubics, so roots and minima are found in closed form or with a bracketed
scalar solve, which keeps the line searches cheap: a handful of samples along
the search direction buys a globally evaluable model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = ["MonotoneCubic", "fit", "evaluate", "find_root", "find_minimum"]


@dataclass(frozen=True)
class MonotoneCubic:
    """Piecewise-cubic Hermite interpolant with shape-limited knot slopes."""

    knots: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray

    def __call__(self, t):
        return evaluate(self, t)

    def shifted(self, offset: float) -> "MonotoneCubic":
        """The interpolant of the data shifted by a constant.

        A constant shift leaves every secant, and therefore every limited
        slope, unchanged, so this is exactly ``self + offset``.
        """
        return MonotoneCubic(self.knots, self.values + float(offset), self.derivatives)


def _endpoint_slope(h0: float, h1: float, d0: float, d1: float) -> float:
    # Non-centered three-point estimate, pulled back into the monotone region.
    slope = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1)
    if np.sign(slope) != np.sign(d0):
        return 0.0
    if np.sign(d0) != np.sign(d1) and abs(slope) > 3.0 * abs(d0):
        return 3.0 * d0
    return slope


def fit(points) -> MonotoneCubic:
    """Fit a monotonicity-preserving cubic through ``points``.

    Args:
        points: array-like of shape (m, 2) with strictly increasing abscissae,
            m >= 2, all entries finite.

    Raises:
        ValueError: on too few points, unsorted/duplicate abscissae, or
            non-finite data.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValueError("need at least two (abscissa, value) pairs")
    if not np.all(np.isfinite(pts)):
        raise ValueError("interpolation data must be finite")
    x = pts[:, 0].copy()
    y = pts[:, 1].copy()
    if np.any(np.diff(x) <= 0.0):
        raise ValueError("abscissae must be strictly increasing")

    h = np.diff(x)
    sec = np.diff(y) / h

    m = np.empty_like(y)
    if len(x) == 2:
        m[:] = sec[0]
    else:
        for j in range(1, len(x) - 1):
            if sec[j - 1] * sec[j] <= 0.0:
                # Local extremum (or flat spot) of the data: flat tangent.
                m[j] = 0.0
            else:
                avg = 0.5 * (sec[j - 1] + sec[j])
                cap = 3.0 * min(abs(sec[j - 1]), abs(sec[j]))
                m[j] = np.sign(avg) * min(abs(avg), cap)
        m[0] = _endpoint_slope(h[0], h[1], sec[0], sec[1])
        m[-1] = _endpoint_slope(h[-1], h[-2], sec[-1], sec[-2])

    return MonotoneCubic(x, y, m)


def evaluate(spline: MonotoneCubic, t):
    """Evaluate the interpolant at scalar or array ``t``."""
    x, y, m = spline.knots, spline.values, spline.derivatives
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    idx = np.clip(np.searchsorted(x, tt, side="right") - 1, 0, len(x) - 2)
    h = x[idx + 1] - x[idx]
    s = (tt - x[idx]) / h
    s2 = s * s
    s3 = s2 * s
    out = (
        (2.0 * s3 - 3.0 * s2 + 1.0) * y[idx]
        + (s3 - 2.0 * s2 + s) * h * m[idx]
        + (-2.0 * s3 + 3.0 * s2) * y[idx + 1]
        + (s3 - s2) * h * m[idx + 1]
    )
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(out[0])
    return out


def find_root(spline: MonotoneCubic, bracket: tuple[float, float]):
    """Smallest zero of the interpolant inside ``bracket``, or None.

    Scans the knot sub-intervals left to right and solves the first one whose
    endpoint values change sign (a knot value identically zero counts). Zeros
    the cubic to an absolute abscissa tolerance of 1e-12.
    """
    a, b = float(bracket[0]), float(bracket[1])
    if b <= a:
        raise ValueError("empty bracket")
    cuts = np.unique(np.concatenate(([a, b], spline.knots[(spline.knots > a) & (spline.knots < b)])))
    vals = evaluate(spline, cuts)
    for i in range(len(cuts) - 1):
        f0, f1 = vals[i], vals[i + 1]
        if f0 == 0.0:
            return float(cuts[i])
        if f0 * f1 < 0.0:
            return float(brentq(lambda t: evaluate(spline, t), cuts[i], cuts[i + 1], xtol=1e-12))
    if vals[-1] == 0.0:
        return float(cuts[-1])
    return None


def _piece_critical_points(spline: MonotoneCubic, j: int) -> list[float]:
    # Stationary points of piece j, in global coordinates.
    x, y, m = spline.knots, spline.values, spline.derivatives
    h = x[j + 1] - x[j]
    # d/ds of the Hermite cubic in the unit parameter s.
    qa = 6.0 * y[j] + 3.0 * h * m[j] - 6.0 * y[j + 1] + 3.0 * h * m[j + 1]
    qb = -6.0 * y[j] - 4.0 * h * m[j] + 6.0 * y[j + 1] - 2.0 * h * m[j + 1]
    qc = h * m[j]
    roots: list[float] = []
    if qa == 0.0:
        if qb != 0.0:
            roots = [-qc / qb]
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc >= 0.0:
            sq = np.sqrt(disc)
            roots = [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)]
    return [x[j] + s * h for s in roots if 0.0 < s < 1.0]


def find_minimum(spline: MonotoneCubic, interval: tuple[float, float]) -> tuple[float, float]:
    """Global minimum of the interpolant over ``interval``.

    Candidates are the interval endpoints, the interior knots, and the
    stationary points of each cubic piece; exact ties go to the smaller
    abscissa.
    """
    a, b = float(interval[0]), float(interval[1])
    if b < a:
        raise ValueError("empty interval")
    cand = [a, b]
    cand.extend(float(k) for k in spline.knots if a < k < b)
    for j in range(len(spline.knots) - 1):
        if spline.knots[j + 1] <= a or spline.knots[j] >= b:
            continue
        cand.extend(t for t in _piece_critical_points(spline, j) if a <= t <= b)
    cand = sorted(set(cand))
    vals = [evaluate(spline, t) for t in cand]
    best = int(np.argmin(vals))
    return cand[best], vals[best]
