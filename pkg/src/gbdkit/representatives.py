"""Representative functions of the monotone operators ``Id`` and ``log``.

Each :class:`Representative` is a convex function ``h(x, v) >= x v`` that is
tight exactly on the graph of its operator.  For every operator we expose the
smallest member (Fitzpatrick), the largest member (sigma) and, through
:func:`fenchel_young`, the ``f(x) + f*(v)`` member for a catalog ``f``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .convex import ConvexFunction1D, Interval, boltzmann_shannon, energy
from .scalar import lambert_w_scaled

__all__ = [
    "MonotoneOperator1D",
    "Representative",
    "identity_operator",
    "log_operator",
    "subdifferential_operator",
    "negated",
    "fitzpatrick_id",
    "sigma_id",
    "fenchel_young",
    "fitzpatrick_log",
    "sigma_log",
    "brute_fitzpatrick",
]

inf = math.inf


@dataclass(frozen=True)
class MonotoneOperator1D:
    name: str
    apply: Callable[[float], Interval]
    dom: Interval


@dataclass(frozen=True)
class Representative:
    name: str
    eval: Callable
    operator: MonotoneOperator1D

    def __call__(self, x, v):
        return self.eval(x, v)


def identity_operator() -> MonotoneOperator1D:
    return MonotoneOperator1D("id", Interval.point, Interval.real_line())


def subdifferential_operator(f: ConvexFunction1D, name: str | None = None) -> MonotoneOperator1D:
    return MonotoneOperator1D(name or f"subdiff:{f.name}", f.subdiff, f.dom_subdiff)


def log_operator() -> MonotoneOperator1D:
    return subdifferential_operator(boltzmann_shannon(), name="log")


def negated(T: MonotoneOperator1D) -> MonotoneOperator1D:
    """``-T``; monotone only in the trivial case, which is fine for distances."""
    return MonotoneOperator1D(f"-{T.name}", lambda y: T.apply(y).negate(), T.dom)


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _fitz_id(x, v):
    x, v = np.asarray(x, dtype=float), np.asarray(v, dtype=float)
    return _out(x * v + 0.25 * (x - v) ** 2)


def _sigma_id(x, v):
    x, v = np.asarray(x, dtype=float), np.asarray(v, dtype=float)
    return _out(np.where(x == v, x * v, inf))


def fitzpatrick_id() -> Representative:
    return Representative("fitzpatrick", _fitz_id, identity_operator())


def sigma_id() -> Representative:
    return Representative("sigma", _sigma_id, identity_operator())


def fenchel_young(f: ConvexFunction1D) -> Representative:
    """``(x, v) -> f(x) + f*(v)``, a representative of the subdifferential of ``f``."""
    def ev(x, v):
        fx = np.asarray(f.eval(x), dtype=float)
        fv = np.asarray(f.conj(v), dtype=float)
        return _out(fx + fv)

    op = log_operator() if f.name == "boltzmann_shannon" else subdifferential_operator(f)
    if f.name == "energy":
        op = identity_operator()
    return Representative(f"fenchel_young:{f.name}", ev, op)


def _fitz_log(x, v):
    x, v = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(v, dtype=float))
    out = np.full(x.shape, inf)
    pos = x > 0
    if pos.any():
        xp, vp = x[pos], v[pos]
        w = lambert_w_scaled(xp, 1.0 - vp)
        # x (w + 1/w - 2) = x (w - 1)^2 / w, and x / w = e^{w + v - 1}
        with np.errstate(over="ignore"):
            gap = np.exp(w + vp - 1.0) * (w - 1.0) ** 2
        far = ~np.isfinite(gap)
        gap[far] = xp[far] * (w[far] - 1.0) ** 2 / w[far]
        out[pos] = xp * vp + gap
    zero = x == 0
    # lower-semicontinuous limit x -> 0+ of the formula above
    out[zero] = np.exp(v[zero] - 1.0)
    return _out(out)


def fitzpatrick_log() -> Representative:
    """Fitzpatrick function of ``log``: ``x v + x (W + 1/W - 2)``, ``W = W(x e^{1-v})``."""
    return Representative("fitzpatrick", _fitz_log, log_operator())


def _sigma_log(x, v):
    x, v = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(v, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        logx = np.log(np.where(x > 0, x, 1.0))
    ok = (x > 0) & (v <= logx)
    return _out(np.where(ok, x * logx, inf))


def sigma_log() -> Representative:
    """Largest representative of ``log``, pinned down only through its distance.

    ``x log x`` on ``{v <= log x}`` and ``+inf`` elsewhere, which reproduces
    ``D(x, y) = x log x - x log y`` for ``0 < y <= x``.
    """
    return Representative("sigma", _sigma_log, log_operator())


def brute_fitzpatrick(op: MonotoneOperator1D, x: float, v: float, graph_points) -> float:
    """Grid lower bound for ``F(x, v) = sup over (z, w) in graph of x w + z v - z w``.

    ``graph_points`` are abscissae ``z``; points where ``op`` is empty are skipped
    and set-valued images contribute both endpoints.
    """
    best = -inf
    for z in np.asarray(graph_points, dtype=float):
        img = op.apply(float(z))
        if img.is_empty:
            continue
        for w in {img.lo, img.hi}:
            if math.isfinite(w):
                best = max(best, x * w + z * v - z * w)
    return best


# convenience for callers that want the pair used throughout the catalog
def catalog_pair(operator: str) -> tuple[Representative, Representative, Representative]:
    """``(fitzpatrick, fenchel_young, sigma)`` for ``"id"`` or ``"log"``."""
    if operator == "id":
        return fitzpatrick_id(), fenchel_young(energy()), sigma_id()
    if operator == "log":
        return fitzpatrick_log(), fenchel_young(boltzmann_shannon()), sigma_log()
    raise KeyError(operator)
