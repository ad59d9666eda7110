"""Generalized Bregman distances, their lower closures and classical Bregman distances.

A generalized distance pairs a representative ``h`` of ``S`` with a second
operator ``T``; at ``(x, y)`` it takes the infimum (flat) or supremum (sharp)
of ``h(x, v) - x v`` over ``v`` in ``T y``.  On the real line ``T y`` is an
interval and ``v -> h(x, v) - x v`` is convex, so the supremum sits at an
endpoint and the infimum is a one-dimensional convex minimization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

from .convex import ConvexFunction1D, Interval, eps_subdifferential
from .convex import boltzmann_shannon, energy
from .representatives import (
    MonotoneOperator1D,
    Representative,
    fenchel_young,
    fitzpatrick_id,
    fitzpatrick_log,
    identity_operator,
    log_operator,
    negated,
    sigma_id,
    sigma_log,
)
from .scalar import DEFAULT_TOL, DomainError, Tolerance, check_real, ext_add, lambert_w, lambert_w_exp

__all__ = [
    "Mode",
    "GbdSpec",
    "CheckReport",
    "gbd_eval",
    "closed_fitz_log",
    "closed_sigma_log",
    "closed_kl",
    "quarter_square",
    "graph_indicator",
    "half_square",
    "DISTANCES",
    "LOG_DOMAIN",
    "named_spec",
    "bregman_classic",
    "gbd_equals_bregman_check",
    "enlargement_contains",
    "sum_zero_condition",
    "dc_optimality_condition",
]

inf = math.inf
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Mode(str, Enum):
    FLAT = "flat"
    SHARP = "sharp"


@dataclass(frozen=True)
class GbdSpec:
    S: MonotoneOperator1D
    T: MonotoneOperator1D
    h: Representative
    mode: Mode = Mode.FLAT
    closed: bool = False


@dataclass(frozen=True)
class CheckReport:
    max_dev: float
    n_points: int
    tol: float
    worst: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.max_dev <= self.tol


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


# -- closed-form distances -------------------------------------------------

def closed_fitz_log(x, y):
    """Lower-closed Fitzpatrick distance of ``log``.

    ``+inf`` for ``x < 0``, ``y < 0`` or ``(x > 0, y = 0)``; ``y / e`` on
    ``x = 0``; ``x (W + 1/W - 2)`` with ``W = W(x e / y)`` elsewhere.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out = np.full(x.shape, inf)
    inner = (x > 0) & (y > 0)
    if inner.any():
        xi = x[inner]
        yi = y[inner]
        with np.errstate(over="ignore", under="ignore"):
            arg = xi * math.e / yi
        # the plain ratio keeps W(e x / x) = 1 exact; the log form covers over/underflow
        direct = (arg > 1e-300) & (arg < 1e300)
        w = np.empty_like(xi)
        w[direct] = lambert_w(arg[direct])
        w[~direct] = lambert_w_exp(np.log(xi[~direct]) + 1.0 - np.log(yi[~direct]))
        with np.errstate(over="ignore"):
            # x / W = y e^{W-1}: finite even when x e / y underflows, exact on the diagonal
            vals = yi * np.exp(w - 1.0) * (w - 1.0) ** 2
        far = ~np.isfinite(vals)
        vals[far] = xi[far] * (w[far] - 1.0) ** 2 / w[far]
        out[inner] = vals
    edge = (x == 0) & (y >= 0)
    out[edge] = y[edge] / math.e
    return _out(out)


def closed_sigma_log(x, y):
    """``x log x - x log y`` for ``0 < y <= x``, ``0`` at the origin, ``+inf`` otherwise."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out = np.full(x.shape, inf)
    ok = (y > 0) & (y <= x)
    # log difference, not log of the ratio: the ratio under/overflows for subnormal inputs
    out[ok] = x[ok] * (np.log(x[ok]) - np.log(y[ok]))
    out[(x == 0) & (y == 0)] = 0.0
    return _out(out)


def closed_kl(x, y):
    """Lower closure of the Kullback-Leibler distance, ``0 log 0 = 0``."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out = np.full(x.shape, inf)
    ok = (y > 0) & (x >= 0)
    xo, yo = x[ok], y[ok]
    with np.errstate(divide="ignore", invalid="ignore"):
        xlog = np.where(xo > 0, xo * (np.log(np.where(xo > 0, xo, 1.0)) - np.log(yo)), 0.0)
    out[ok] = xlog - xo + yo
    out[(x == 0) & (y == 0)] = 0.0
    return _out(out)


def quarter_square(x, y):
    """Fitzpatrick distance of ``Id``: ``(x - y)^2 / 4``."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return _out(0.25 * (x - y) ** 2)


def graph_indicator(x, y):
    """Sigma distance of ``Id``: the indicator of the diagonal."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return _out(np.where(x == y, 0.0, inf))


def half_square(x, y):
    """Fenchel-Young distance of the energy, i.e. the Moreau kernel."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return _out(0.5 * (x - y) ** 2)


DISTANCES: dict[str, Callable] = {
    "f_id": quarter_square,
    "sigma_id": graph_indicator,
    "fy_energy": half_square,
    "f_log": closed_fitz_log,
    "sigma_log": closed_sigma_log,
    "kl": closed_kl,
}

LOG_DOMAIN = frozenset({"f_log", "sigma_log", "kl"})


def named_spec(name: str) -> GbdSpec:
    """The :class:`GbdSpec` behind a name in :data:`DISTANCES` (``T = S``, flat)."""
    if name == "f_id":
        h = fitzpatrick_id()
    elif name == "sigma_id":
        h = sigma_id()
    elif name == "fy_energy":
        h = fenchel_young(energy())
    elif name == "f_log":
        h = fitzpatrick_log()
    elif name == "sigma_log":
        h = sigma_log()
    elif name == "kl":
        h = fenchel_young(boltzmann_shannon())
    else:
        raise KeyError(f"unknown distance {name!r}")
    return GbdSpec(h.operator, h.operator, h, Mode.FLAT, closed=name in LOG_DOMAIN)


# -- generic evaluation ----------------------------------------------------

def _gap_fn(h: Representative, x: float) -> Callable[[float], float]:
    def g(v: float) -> float:
        hv = float(h.eval(x, v))
        if math.isinf(hv):
            return hv
        return hv - x * v
    return g


def _golden(g, a: float, b: float, iters: int = 200) -> float:
    c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(iters):
        if b - a <= 1e-13 * (1.0 + abs(a) + abs(b)):
            break
        if gc <= gd:
            b, d, gd = d, c, gc
            c = b - _GOLDEN * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + _GOLDEN * (b - a)
            gd = g(d)
    return min(gc, gd)


def _ray_grows(g, start: float, direction: float) -> bool:
    base = g(start)
    for step in (1.0, 1e3, 1e6):
        val = g(start + direction * step)
        if val > base + 1e-12 * (1.0 + abs(base)):
            return True
    return False


def _sup_over(g, I: Interval) -> float:
    anchors = [e for e in (I.lo, I.hi) if math.isfinite(e)]
    if not anchors:
        anchors = [0.0]
    best = max(g(a) for a in anchors)
    if math.isinf(I.hi) and _ray_grows(g, max(anchors), 1.0):
        return inf
    if math.isinf(I.lo) and _ray_grows(g, min(anchors), -1.0):
        return inf
    return best


def _bracket(g, start: float, direction: float) -> float:
    """Walk out from ``start`` until ``g`` stops decreasing; returns the far end."""
    prev, step = g(start), 1.0
    pos = start
    while step < 1e8:
        nxt = pos + direction * step
        val = g(nxt)
        if not val < prev:
            return nxt
        pos, prev = nxt, val
        step *= 2.0
    return pos


def _inf_over(g, I: Interval) -> float:
    if I.lo == I.hi:
        return g(I.lo)
    lo, hi = I.lo, I.hi
    anchor = 0.0 if not (math.isfinite(lo) or math.isfinite(hi)) else (lo if math.isfinite(lo) else hi)
    if math.isinf(lo):
        lo = _bracket(g, anchor, -1.0)
    if math.isinf(hi):
        hi = _bracket(g, anchor, 1.0)
    best = _golden(g, lo, hi)
    for e, closed in ((I.lo, I.lo_closed), (I.hi, I.hi_closed)):
        if closed:
            best = min(best, g(e))
    return best


_CLOSURES = {
    ("fitzpatrick", "log"): closed_fitz_log,
    ("sigma", "log"): closed_sigma_log,
    ("fenchel_young:boltzmann_shannon", "log"): closed_kl,
}


def gbd_eval(spec: GbdSpec, x: float, y: float) -> float:
    """Evaluate the distance described by ``spec`` at ``(x, y)``.

    ``+inf`` off ``dom S x dom T``.  With ``spec.closed`` the lower closure is
    used; it is known in closed form for the ``log`` catalog and coincides with
    the distance itself for ``Id``.
    """
    x, y = check_real(x), check_real(y, "y")
    if spec.closed:
        if spec.S.name == "id" and spec.T.name == "id":
            spec = GbdSpec(spec.S, spec.T, spec.h, spec.mode, closed=False)
        else:
            fn = _CLOSURES.get((spec.h.name, spec.S.name))
            if fn is None or spec.T.name != spec.S.name:
                raise DomainError(f"no lower closure known for {spec.h.name} with T={spec.T.name}")
            return fn(x, y)
    if x not in spec.S.dom or y not in spec.T.dom:
        return inf
    ty = spec.T.apply(y)
    if ty.is_empty:
        return inf
    g = _gap_fn(spec.h, x)
    val = _sup_over(g, ty) if spec.mode is Mode.SHARP else _inf_over(g, ty)
    # h >= <x, v> holds exactly; clip rounding noise
    return max(val, 0.0)


# -- classical Bregman distances -------------------------------------------

def _linear_extreme(c: float, I: Interval, want_max: bool) -> float:
    if c == 0.0:
        return 0.0
    end = I.hi if (c > 0) == want_max else I.lo
    return c * end


def bregman_classic(f: ConvexFunction1D, mode: Mode, x: float, y: float) -> float:
    """``f(x) - f(y) + inf/sup over v in df(y) of (y - x) v``."""
    x, y = check_real(x), check_real(y, "y")
    fx = float(f.eval(x))
    if math.isinf(fx):
        return inf
    sub = f.subdiff(y)
    if sub.is_empty:
        return inf
    lin = _linear_extreme(y - x, sub, want_max=Mode(mode) is Mode.SHARP)
    return ext_add(fx - float(f.eval(y)), lin)


def _dev(a: float, b: float) -> float:
    if math.isinf(a) or math.isinf(b):
        return 0.0 if a == b else inf
    return abs(a - b)


def gbd_equals_bregman_check(f: ConvexFunction1D, grid: Iterable[tuple[float, float]],
                             mode: Mode = Mode.FLAT, tol: float = 1e-9) -> CheckReport:
    """Largest gap between the Fenchel-Young distance of ``f`` and its Bregman distance.

    The grid must avoid ``(dom f minus dom df) x dom df``, where the two
    are known to disagree.
    """
    h = fenchel_young(f)
    op = h.operator
    spec = GbdSpec(op, op, h, Mode(mode))
    worst, max_dev, n = None, 0.0, 0
    for x, y in grid:
        d = _dev(gbd_eval(spec, x, y), bregman_classic(f, mode, x, y))
        n += 1
        if worst is None or d > max_dev:
            max_dev, worst = d, (x, y)
    return CheckReport(max_dev, n, tol, worst)


# -- enlargements and optimality conditions --------------------------------

def enlargement_contains(h: Representative, eps: float, x: float, v: float,
                         tol: Tolerance = DEFAULT_TOL) -> bool:
    """Is ``v`` in the ``eps``-enlargement ``{v : h(x, v) - x v <= eps}``?"""
    eps = check_real(eps, "eps")
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    return tol.leq(_gap_fn(h, check_real(x))(check_real(v, "v")), eps)


def sum_zero_condition(h: Representative, T: MonotoneOperator1D, eps: float, x: float,
                       tol: Tolerance = DEFAULT_TOL) -> bool:
    """Distance test for ``0`` in ``S^h_eps x + T x``: the flat distance for ``-T`` at ``(x, x)``."""
    eps = check_real(eps, "eps")
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    spec = GbdSpec(h.operator, negated(T), h, Mode.FLAT)
    return tol.leq(gbd_eval(spec, x, x), eps)


def dc_optimality_condition(f: ConvexFunction1D, g: ConvexFunction1D, x: float,
                            eps_grid: Sequence[float], tol: Tolerance = DEFAULT_TOL) -> bool:
    """Sampled global-optimality test for ``f - g`` at ``x``.

    For every ``eps`` in ``eps_grid`` the sharp Fenchel-Young distance of ``f``
    relative to the ``eps``-subdifferential of ``g`` must satisfy
    ``D(x, x) <= eps``.  A finite grid only yields a necessary condition.
    """
    x = check_real(x)
    h = fenchel_young(f)
    if x not in h.operator.dom:
        return False
    gap = _gap_fn(h, x)
    for eps in eps_grid:
        band = eps_subdifferential(g, x, eps)
        if not tol.leq(max(_sup_over(gap, band), 0.0), eps):
            return False
    return True
