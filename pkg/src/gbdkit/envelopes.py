"""Left and right envelopes and proximity operators of a function under a distance.

A query names the side, the regularized function ``theta``, the parameter
``gamma`` and the distance (a key of :data:`gbdkit.distances.DISTANCES` or an
arbitrary :class:`GbdSpec`).  Queries with ``theta = |. - 1/2|`` and a catalog
distance are answered in closed form; everything else goes to the oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from . import closed_forms as cf
from .convex import ConvexFunction1D, Interval, abs_shift
from .distances import DISTANCES, LOG_DOMAIN, GbdSpec, gbd_eval
from .oracle import LINE_WINDOW, LOG_WINDOW, SearchWindow, brute_interval_argmin, brute_min
from .scalar import DomainError, EmptyDomainError, check_real

__all__ = [
    "Side",
    "EnvelopeQuery",
    "ProxResult",
    "CLOSED_FORMS",
    "envelope",
    "prox",
    "oracle_envelope",
    "oracle_prox",
    "objective",
    "default_window",
    "make_query",
]


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class EnvelopeQuery:
    side: Side
    theta: ConvexFunction1D
    gamma: float
    dist: str | GbdSpec

    def __post_init__(self):
        object.__setattr__(self, "side", Side(self.side))
        if not check_real(self.gamma, "gamma") > 0:
            raise DomainError("gamma must be positive")
        if isinstance(self.dist, str) and self.dist not in DISTANCES:
            raise KeyError(f"unknown distance {self.dist!r}")


@dataclass(frozen=True)
class ProxResult:
    set: Interval
    selected: float | None = field(default=None)

    @classmethod
    def from_set(cls, s: Interval) -> "ProxResult":
        # midpoint selection: deterministic and interior
        return cls(s, None if s.is_empty else s.midpoint)


CLOSED_FORMS: dict[tuple[Side, str], tuple[Callable, Callable]] = {
    (Side.LEFT, "f_log"): (cf.env_fitz_log_left, cf.prox_fitz_log_left),
    (Side.RIGHT, "f_log"): (cf.env_fitz_log_right, cf.prox_fitz_log_right),
    (Side.LEFT, "sigma_log"): (cf.env_sigma_log_left, cf.prox_sigma_log_left),
    (Side.RIGHT, "sigma_log"): (cf.env_sigma_log_right, cf.prox_sigma_log_right),
    (Side.LEFT, "kl"): (cf.env_kl_left, cf.prox_kl_left),
    (Side.RIGHT, "kl"): (cf.env_kl_right, cf.prox_kl_right),
    (Side.LEFT, "f_id"): (cf.env_fitz_id, cf.prox_fitz_id),
    (Side.RIGHT, "f_id"): (cf.env_fitz_id, cf.prox_fitz_id),
}


def _is_half_abs(theta: ConvexFunction1D) -> bool:
    return theta.name == "abs_shift" and theta.params == (cf.CENTER,)


def _closed(q: EnvelopeQuery, point: float):
    """``(env, prox_set)`` in closed form, or ``None`` when no formula applies."""
    if not isinstance(q.dist, str):
        return None
    if q.dist == "sigma_id":
        # the graph indicator forces x = y whatever theta is
        return float(q.theta.eval(point)), Interval.point(point)
    if not _is_half_abs(q.theta):
        return None
    if q.dist == "fy_energy":
        p = cf.moreau_prox(q.gamma, cf.CENTER, point)
        return cf.moreau_reference(q.gamma, cf.CENTER, point), Interval.point(p)
    pair = CLOSED_FORMS.get((q.side, q.dist))
    if pair is None:
        return None
    env_fn, prox_fn = pair
    return env_fn(q.gamma, point), prox_fn(q.gamma, point)


def default_window(q: EnvelopeQuery) -> SearchWindow:
    if isinstance(q.dist, str) and q.dist in LOG_DOMAIN:
        return LOG_WINDOW
    return LINE_WINDOW


def _distance_fn(dist: str | GbdSpec) -> Callable:
    if isinstance(dist, str):
        return DISTANCES[dist]
    return np.vectorize(lambda x, y: gbd_eval(dist, float(x), float(y)), otypes=[float])


def objective(q: EnvelopeQuery, point: float) -> Callable:
    """The map ``z -> theta(z) + D(z, point) / gamma`` (left) or ``D(point, z)`` (right)."""
    D = _distance_fn(q.dist)
    theta, inv = q.theta.eval, 1.0 / q.gamma

    if q.side is Side.LEFT:
        def phi(z):
            return np.asarray(theta(z), dtype=float) + inv * np.asarray(D(z, point), dtype=float)
    else:
        def phi(z):
            return np.asarray(theta(z), dtype=float) + inv * np.asarray(D(point, z), dtype=float)
    return phi


def oracle_envelope(q: EnvelopeQuery, point: float, window: SearchWindow | None = None) -> float:
    try:
        return brute_min(objective(q, point), window or default_window(q))[1]
    except EmptyDomainError:
        return math.inf


def oracle_prox(q: EnvelopeQuery, point: float, window: SearchWindow | None = None,
                slack: float = 1e-9) -> ProxResult:
    s = brute_interval_argmin(objective(q, point), window or default_window(q), slack)
    return ProxResult.from_set(s)


def envelope(q: EnvelopeQuery, point: float) -> float:
    point = check_real(point, "point")
    hit = _closed(q, point)
    if hit is not None:
        return hit[0]
    return oracle_envelope(q, point)


def prox(q: EnvelopeQuery, point: float) -> ProxResult:
    """Proximity set and its midpoint selection.

    Raises
    ------
    EmptyDomainError
        When the objective is ``+inf`` everywhere, so the argmin is empty.
    """
    point = check_real(point, "point")
    hit = _closed(q, point)
    if hit is not None:
        if hit[1].is_empty:
            raise EmptyDomainError(f"{q.side.value} prox of {q.dist} is empty at {point}")
        return ProxResult.from_set(hit[1])
    return oracle_prox(q, point)


def make_query(side: str | Side, dist: str | GbdSpec, gamma: float,
               theta: ConvexFunction1D | None = None) -> EnvelopeQuery:
    """Query with ``theta = |. - 1/2|`` unless another function is given."""
    return EnvelopeQuery(Side(side), theta or abs_shift(cf.CENTER), gamma, dist)
