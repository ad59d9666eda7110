"""Closed-form envelopes and proximity points of ``theta = |. - 1/2|``.

Each family regularizes ``theta`` with one of the lower-closed distances of
``log`` (``f_log``, ``kl``, ``sigma_log``) on ``[0, inf)`` or with a distance
of ``Id`` on the whole line.  "Left" minimizes over the first argument of
the distance, "right" over the second::

    left:  env(x) = inf_y theta(y) + D(y, x) / gamma
    right: env(x) = inf_y theta(y) + D(x, y) / gamma

Every ``prox_*`` function returns an :class:`Interval` (degenerate except at
the isolated points where the minimizer is not unique); every ``env_*``
function returns a float.  Points outside the domain give ``+inf`` and the
empty set.

The formulas were rederived from the first-order conditions and checked
against :mod:`gbdkit.oracle`; branch guards are written so that large
``gamma`` never overflows ``exp``.
"""
from __future__ import annotations

import math

from .convex import Interval
from .scalar import DomainError, check_real, lambert_w

__all__ = [
    "CENTER",
    "env_fitz_log_left", "prox_fitz_log_left",
    "env_fitz_log_right", "prox_fitz_log_right",
    "env_sigma_log_left", "prox_sigma_log_left",
    "env_sigma_log_right", "prox_sigma_log_right",
    "env_kl_left", "prox_kl_left", "env_kl_right", "prox_kl_right",
    "env_fitz_id", "prox_fitz_id", "moreau_reference", "moreau_prox",
]

CENTER = 0.5
inf = math.inf
E = math.e
# |gamma e - 1| (or |gamma - 1|) below this is treated as the tie case
_TIE = 1e-12


def _theta(x: float) -> float:
    return abs(x - CENTER)


def _args(gamma, x):
    gamma, x = check_real(gamma, "gamma"), check_real(x)
    if not gamma > 0:
        raise DomainError("gamma must be positive")
    return gamma, x


def _exp_scaled(x: float, t: float) -> float:
    """``x * exp(t)`` for ``x > 0`` without overflowing the exponential."""
    return math.exp(math.log(x) + t)


# -- Fitzpatrick distance of log -----------------------------------------

def _fitz_log_left(gamma, x):
    gamma, x = _args(gamma, x)
    if x < 0:
        return inf, Interval.empty()
    if x == 0:
        return CENTER, Interval.point(0.0)
    if x <= math.exp(-gamma) / (2.0 + 2.0 * gamma):
        scaled = _exp_scaled(x, gamma)
        return CENTER - scaled, Interval.point((1.0 + gamma) * scaled)
    if gamma < 1.0 and x > math.exp(gamma) / (2.0 - 2.0 * gamma):
        scaled = _exp_scaled(x, -gamma)
        return scaled - CENTER, Interval.point((1.0 - gamma) * scaled)
    w = lambert_w(E / (2.0 * x))
    return (w - 1.0) ** 2 / (2.0 * gamma * w), Interval.point(CENTER)


def env_fitz_log_left(gamma: float, x: float) -> float:
    return _fitz_log_left(gamma, x)[0]


def prox_fitz_log_left(gamma: float, x: float) -> Interval:
    return _fitz_log_left(gamma, x)[1]


def _fitz_log_right(gamma, x):
    gamma, x = _args(gamma, x)
    if x < 0:
        return inf, Interval.empty()
    ge = gamma * E
    if x == 0:
        # theta(y) + y / (gamma e): flat on [0, 1/2] exactly when gamma e = 1
        if abs(ge - 1.0) <= _TIE:
            return CENTER, Interval.closed(0.0, CENTER)
        if ge < 1.0:
            return CENTER, Interval.point(0.0)
        return 1.0 / (2.0 * ge), Interval.point(CENTER)
    wp = lambert_w(gamma)
    if x > gamma * (wp + 1.0) / (2.0 * wp):
        k = wp / (gamma * (wp + 1.0))
        y = x * k
        # W(e gamma (W(gamma) + 1) / W(gamma)) equals 1 + W(gamma)
        return y - CENTER + x * (wp * k), Interval.point(y)
    if ge < 1.0:
        wm = lambert_w(-gamma)
        if x < -gamma * (wm + 1.0) / (2.0 * wm):
            # factor first so a subnormal x does not round the selection to 0
            k = -wm / (gamma * (wm + 1.0))
            y = x * k
            return CENTER - y - x * (wm * k), Interval.point(y)
    w = lambert_w(2.0 * x * E)
    # x (w - 1)^2 / w with x / w = e^{w - 1} / 2, which survives subnormal x
    return (w - 1.0) ** 2 * math.exp(w - 1.0) / (2.0 * gamma), Interval.point(CENTER)


def env_fitz_log_right(gamma: float, x: float) -> float:
    return _fitz_log_right(gamma, x)[0]


def prox_fitz_log_right(gamma: float, x: float) -> Interval:
    return _fitz_log_right(gamma, x)[1]


# -- sigma distance of log ------------------------------------------------

def _sigma_log_left(gamma, x):
    gamma, x = _args(gamma, x)
    if x < 0:
        return inf, Interval.empty()
    if x == 0:
        # only y = 0 has finite distance to 0
        return CENTER, Interval.point(0.0)
    if x >= CENTER or gamma < 1.0:
        return _theta(x), Interval.point(x)
    if math.log(2.0 * x) <= 1.0 - gamma:
        y = _exp_scaled(x, gamma - 1.0)
        return CENTER - y / gamma, Interval.point(y)
    return -math.log(2.0 * x) / (2.0 * gamma), Interval.point(CENTER)


def env_sigma_log_left(gamma: float, x: float) -> float:
    return _sigma_log_left(gamma, x)[0]


def prox_sigma_log_left(gamma: float, x: float) -> Interval:
    return _sigma_log_left(gamma, x)[1]


def _sigma_log_right(gamma, x):
    gamma, x = _args(gamma, x)
    if x < 0:
        return inf, Interval.empty()
    if x <= CENTER or gamma <= 1.0:
        return _theta(x), Interval.point(x)
    if x > gamma / 2.0:
        return -CENTER + x / gamma * (1.0 + math.log(gamma)), Interval.point(x / gamma)
    return x / gamma * math.log(2.0 * x), Interval.point(CENTER)


def env_sigma_log_right(gamma: float, x: float) -> float:
    return _sigma_log_right(gamma, x)[0]


def prox_sigma_log_right(gamma: float, x: float) -> Interval:
    return _sigma_log_right(gamma, x)[1]


# -- Kullback-Leibler (Fenchel-Young representative of log) ----------------

def _kl_left(gamma, y):
    gamma, y = _args(gamma, y)
    if y < 0:
        return inf, Interval.empty()
    if y == 0:
        return CENTER, Interval.point(0.0)
    log2y = math.log(2.0 * y)
    if log2y < -gamma:
        x = _exp_scaled(y, gamma)
        return (y - x) / gamma + CENTER, Interval.point(x)
    if log2y > gamma:
        x = _exp_scaled(y, -gamma)
        return (y - x) / gamma - CENTER, Interval.point(x)
    return (2.0 * y - math.log(y) - 1.0 - math.log(2.0)) / (2.0 * gamma), Interval.point(CENTER)


def env_kl_left(gamma: float, y: float) -> float:
    return _kl_left(gamma, y)[0]


def prox_kl_left(gamma: float, y: float) -> Interval:
    return _kl_left(gamma, y)[1]


def _kl_right(gamma, x):
    gamma, x = _args(gamma, x)
    if x < 0:
        return inf, Interval.empty()
    if gamma < 1.0 and x < (1.0 - gamma) / 2.0:
        return math.log1p(-gamma) / gamma * x + CENTER, Interval.point(x / (1.0 - gamma))
    if x > (1.0 + gamma) / 2.0:
        return math.log1p(gamma) / gamma * x - CENTER, Interval.point(x / (1.0 + gamma))
    if x == 0:
        # theta(y) + y / gamma: flat on [0, 1/2] when gamma = 1
        prox = Interval.closed(0.0, CENTER) if abs(gamma - 1.0) <= _TIE else Interval.point(CENTER)
        return CENTER / gamma, prox
    return (x * math.log(2.0 * x) - x + CENTER) / gamma, Interval.point(CENTER)


def env_kl_right(gamma: float, x: float) -> float:
    return _kl_right(gamma, x)[0]


def prox_kl_right(gamma: float, x: float) -> Interval:
    return _kl_right(gamma, x)[1]


# -- energy: Fitzpatrick distance of Id and the Moreau envelope ------------

def moreau_prox(gamma: float, c: float, point: float) -> float:
    """Soft thresholding: the Moreau proximity point of ``|. - c|``."""
    gamma, point = _args(gamma, point)
    d = point - check_real(c, "c")
    if abs(d) <= gamma:
        return c
    return point - math.copysign(gamma, d)


def moreau_reference(gamma: float, c: float, point: float) -> float:
    """Moreau envelope of ``|. - c|`` with parameter ``gamma`` (a Huber function)."""
    gamma, point = _args(gamma, point)
    d = abs(point - check_real(c, "c"))
    if d <= gamma:
        return d * d / (2.0 * gamma)
    return d - gamma / 2.0


def _fitz_id(gamma, y):
    # D = (x - y)^2 / 4 is symmetric, so left and right coincide
    gamma, y = _args(gamma, y)
    p = moreau_prox(2.0 * gamma, CENTER, y)
    return _theta(p) + (p - y) ** 2 / (4.0 * gamma), Interval.point(p)


def env_fitz_id(gamma: float, y: float) -> float:
    return _fitz_id(gamma, y)[0]


def prox_fitz_id(gamma: float, y: float) -> Interval:
    return _fitz_id(gamma, y)[1]
