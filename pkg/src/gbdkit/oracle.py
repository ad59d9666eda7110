"""Brute-force scalar minimization: the independent reference for closed forms.

Objectives are extended-real valued: ``+inf`` marks points outside the
effective domain and is skipped, never treated as a large number.  They are
called with numpy arrays when they support it and point by point otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .convex import Interval
from .scalar import DomainError, EmptyDomainError

__all__ = ["SearchWindow", "LOG_WINDOW", "LINE_WINDOW", "brute_min", "brute_interval_argmin"]


@dataclass(frozen=True)
class SearchWindow:
    lo: float
    hi: float
    coarse_points: int = 2001
    refine_rounds: int = 4

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("search window needs lo < hi")
        if self.coarse_points < 100:
            raise ValueError("coarse_points must be at least 100")
        if self.refine_rounds < 2:
            raise ValueError("refine_rounds must be at least 2")

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.coarse_points - 1)


LOG_WINDOW = SearchWindow(0.0, 50.0)
LINE_WINDOW = SearchWindow(-50.0, 50.0)


def _evaluate(objective: Callable, xs: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(objective(xs), dtype=float)
    except (TypeError, ValueError):
        vals = None
    if vals is None or vals.shape != xs.shape:
        vals = np.array([float(objective(float(x))) for x in xs])
    if np.isnan(vals).any():
        raise DomainError("objective returned NaN")
    if np.isneginf(vals).any():
        raise DomainError("objective returned -inf")
    return vals


def _scan(objective, lo: float, hi: float, n: int):
    xs = np.linspace(lo, hi, n)
    vals = _evaluate(objective, xs)
    i = int(np.argmin(vals))
    return xs, vals, i


def brute_min(objective: Callable, window: SearchWindow = LOG_WINDOW) -> tuple[float, float]:
    """Grid minimum of ``objective`` on ``window`` with nested zoom-in rounds.

    After the coarse scan, each round rescans ``[best - 2h, best + 2h]`` (``h``
    the current spacing, clipped to the window) with the same number of
    points.  The incumbent is only ever replaced by a strictly better point,
    so the returned value never exceeds the objective at any scanned point.

    Returns
    -------
    (argmin, min_value)

    Raises
    ------
    EmptyDomainError
        If the objective is ``+inf`` at every coarse grid point.
    """
    n = window.coarse_points
    xs, vals, i = _scan(objective, window.lo, window.hi, n)
    if math.isinf(vals[i]):
        raise EmptyDomainError("objective is +inf on the whole search window")
    best_x, best_v = float(xs[i]), float(vals[i])
    h = window.spacing
    for _ in range(window.refine_rounds):
        lo, hi = max(window.lo, best_x - 2 * h), min(window.hi, best_x + 2 * h)
        if not lo < hi:
            break
        xs, vals, i = _scan(objective, lo, hi, n)
        if vals[i] < best_v:
            best_x, best_v = float(xs[i]), float(vals[i])
        h = (hi - lo) / (n - 1)
    return best_x, best_v


def _refine_edge(objective, threshold: float, inside: float, outside: float,
                 n: int, rounds: int) -> float:
    """Move ``inside`` toward the sublevel-set boundary between the two points."""
    for _ in range(rounds):
        xs = np.linspace(inside, outside, n)
        ok = _evaluate(objective, xs) <= threshold
        # first failing point along the segment bounds the boundary
        k = int(np.argmin(ok)) if not ok.all() else n
        if k == 0:
            break
        inside = float(xs[k - 1])
        if k == n:
            return inside
        outside = float(xs[k])
    return inside


def brute_interval_argmin(objective: Callable, window: SearchWindow = LOG_WINDOW,
                          slack: float = 1e-9) -> Interval:
    """Interval hull of the points whose value is within ``slack`` of the minimum.

    The coarse hull is widened to contain the refined minimizer, then each
    end is pinned down by ``refine_rounds`` nested scans toward the
    neighbouring grid point that fails the threshold.
    """
    best_x, best_v = brute_min(objective, window)
    threshold = best_v + slack
    n = window.coarse_points
    xs = np.linspace(window.lo, window.hi, n)
    ok = _evaluate(objective, xs) <= threshold
    idx = np.flatnonzero(ok)
    lo = min(best_x, float(xs[idx[0]])) if idx.size else best_x
    hi = max(best_x, float(xs[idx[-1]])) if idx.size else best_x
    rounds = window.refine_rounds + 1
    below = xs[xs < lo]
    if below.size:
        lo = _refine_edge(objective, threshold, lo, float(below[-1]), n, rounds)
    above = xs[xs > hi]
    if above.size:
        hi = _refine_edge(objective, threshold, hi, float(above[0]), n, rounds)
    return Interval.closed(lo, hi)
