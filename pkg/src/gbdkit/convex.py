"""Proper lsc convex functions on the real line, with conjugates and subdifferentials."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .scalar import DEFAULT_TOL, DomainError, Tolerance, check_real

__all__ = [
    "Interval",
    "ConvexFunction1D",
    "energy",
    "boltzmann_shannon",
    "abs_shift",
    "indicator",
    "linear",
    "eps_subdiff_contains",
    "eps_subdifferential",
]

inf = math.inf


@dataclass(frozen=True)
class Interval:
    """A (possibly empty, possibly unbounded) interval of the real line.

    Infinite endpoints are always open.  The empty interval is represented
    canonically by ``Interval.empty()``.
    """

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise DomainError("interval endpoint is NaN")
        if math.isinf(self.lo):
            object.__setattr__(self, "lo_closed", False)
        if math.isinf(self.hi):
            object.__setattr__(self, "hi_closed", False)

    @classmethod
    def empty(cls) -> "Interval":
        return cls(inf, -inf, False, False)

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def real_line(cls) -> "Interval":
        return cls(-inf, inf, False, False)

    @property
    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def length(self) -> float:
        return 0.0 if self.is_empty else self.hi - self.lo

    @property
    def midpoint(self) -> float:
        if self.is_empty or not self.is_bounded:
            raise DomainError("midpoint needs a bounded nonempty interval")
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, x: float) -> bool:
        if self.is_empty:
            return False
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return bool(above and below)

    def contains_array(self, x):
        x = np.asarray(x, dtype=float)
        if self.is_empty:
            return np.zeros(x.shape, dtype=bool)
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above & below

    def closure(self) -> "Interval":
        if self.is_empty:
            return self
        return Interval(self.lo, self.hi, True, True)

    def negate(self) -> "Interval":
        if self.is_empty:
            return self
        return Interval(-self.hi, -self.lo, self.hi_closed, self.lo_closed)

    def subset_of(self, other: "Interval") -> bool:
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        lo_ok = self.lo > other.lo or (self.lo == other.lo and (other.lo_closed or not self.lo_closed))
        hi_ok = self.hi < other.hi or (self.hi == other.hi and (other.hi_closed or not self.hi_closed))
        return lo_ok and hi_ok

    def hausdorff(self, other: "Interval") -> float:
        """Hausdorff distance between the closures of two nonempty intervals."""
        if self.is_empty or other.is_empty:
            raise DomainError("Hausdorff distance of an empty interval")
        return max(_absdiff(self.lo, other.lo), _absdiff(self.hi, other.hi))

    def __str__(self):
        if self.is_empty:
            return "{}"
        return f"{'[' if self.lo_closed else '('}{self.lo:g}, {self.hi:g}{']' if self.hi_closed else ')'}"


def _absdiff(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b)


def _out(arr):
    # numpy 0-d results come back as plain floats
    return float(arr) if np.ndim(arr) == 0 else arr


@dataclass(frozen=True)
class ConvexFunction1D:
    """A catalog convex function: value, conjugate, subdifferential and domains.

    ``eval`` and ``conj`` accept scalars or numpy arrays.  ``subdiff`` is
    scalar-only and returns an :class:`Interval`.
    """

    name: str
    eval: Callable
    conj: Callable
    subdiff: Callable[[float], Interval]
    dom: Interval
    dom_subdiff: Interval
    params: tuple = field(default=())

    def __call__(self, x):
        return self.eval(x)


def energy() -> ConvexFunction1D:
    half_sq = lambda x: _out(0.5 * np.square(np.asarray(x, dtype=float)))
    return ConvexFunction1D(
        name="energy",
        eval=half_sq,
        conj=half_sq,
        subdiff=lambda x: Interval.point(check_real(x)),
        dom=Interval.real_line(),
        dom_subdiff=Interval.real_line(),
    )


def _ent(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.where(x > 0, x * np.log(np.where(x > 0, x, 1.0)) - x, inf)
    return _out(np.where(x == 0, 0.0, val))


def _ent_subdiff(x: float) -> Interval:
    x = check_real(x)
    return Interval.point(math.log(x)) if x > 0 else Interval.empty()


def boltzmann_shannon() -> ConvexFunction1D:
    """Negative Boltzmann-Shannon entropy ``x log x - x`` (``0 log 0 = 0``)."""
    return ConvexFunction1D(
        name="boltzmann_shannon",
        eval=_ent,
        conj=lambda v: _out(np.exp(np.asarray(v, dtype=float))),
        subdiff=_ent_subdiff,
        dom=Interval(0.0, inf, True, False),
        dom_subdiff=Interval(0.0, inf, False, False),
    )


def abs_shift(c: float) -> ConvexFunction1D:
    """``x -> |x - c|``."""
    c = check_real(c, "c")

    def conj(v):
        v = np.asarray(v, dtype=float)
        return _out(np.where(np.abs(v) <= 1.0, c * v, inf))

    def subdiff(x: float) -> Interval:
        x = check_real(x)
        if x == c:
            return Interval.closed(-1.0, 1.0)
        return Interval.point(1.0 if x > c else -1.0)

    return ConvexFunction1D(
        name="abs_shift",
        eval=lambda x: _out(np.abs(np.asarray(x, dtype=float) - c)),
        conj=conj,
        subdiff=subdiff,
        dom=Interval.real_line(),
        dom_subdiff=Interval.real_line(),
        params=(c,),
    )


def indicator(C: Interval) -> ConvexFunction1D:
    """Indicator of the interval ``C``; its conjugate is the support function."""
    if C.is_empty:
        raise DomainError("indicator of an empty set")
    a, b = C.lo, C.hi

    def ev(x):
        return _out(np.where(C.contains_array(x), 0.0, inf))

    def conj(v):
        v = np.asarray(v, dtype=float)
        with np.errstate(invalid="ignore"):
            upper = np.where(v > 0, np.inf if math.isinf(b) else b * v, 0.0)
            lower = np.where(v < 0, np.inf if math.isinf(a) else a * v, 0.0)
        return _out(np.where(v > 0, upper, np.where(v < 0, lower, 0.0)))

    def subdiff(x: float) -> Interval:
        x = check_real(x)
        if x not in C:
            return Interval.empty()
        at_lo, at_hi = x == a, x == b
        if at_lo and at_hi:
            return Interval.real_line()
        if at_lo:
            return Interval(-inf, 0.0, False, True)
        if at_hi:
            return Interval(0.0, inf, True, False)
        return Interval.point(0.0)

    return ConvexFunction1D(
        name="indicator",
        eval=ev,
        conj=conj,
        subdiff=subdiff,
        dom=C,
        dom_subdiff=C,
        params=(a, b, C.lo_closed, C.hi_closed),
    )


def linear(slope: float) -> ConvexFunction1D:
    """``x -> slope * x``; its conjugate is the indicator of ``{slope}``."""
    a = check_real(slope, "slope")
    return ConvexFunction1D(
        name="linear",
        eval=lambda x: _out(a * np.asarray(x, dtype=float)),
        conj=lambda v: _out(np.where(np.asarray(v, dtype=float) == a, 0.0, inf)),
        subdiff=lambda x: Interval.point(a),
        dom=Interval.real_line(),
        dom_subdiff=Interval.real_line(),
        params=(a,),
    )


def fenchel_young_gap(f: ConvexFunction1D, x: float, v: float) -> float:
    """``f(x) + f*(v) - x v``; ``+inf`` when either term is infinite."""
    fx, fv = f.eval(x), f.conj(v)
    if math.isinf(fx) or math.isinf(fv):
        return inf
    return fx + fv - x * v


def eps_subdiff_contains(f: ConvexFunction1D, x: float, v: float, eps: float,
                         tol: Tolerance = DEFAULT_TOL) -> bool:
    x, v, eps = check_real(x), check_real(v, "v"), check_real(eps, "eps")
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    return tol.leq(fenchel_young_gap(f, x, v), eps)


def _expand_edge(gap, inside: float, direction: float, eps: float) -> float:
    step = 1.0
    while step < 1e9:
        probe = inside + direction * step
        if not gap(probe) <= eps:
            break
        inside = probe
        step *= 2.0
    else:
        return direction * inf
    outside = inside + direction * step
    for _ in range(200):
        mid = 0.5 * (inside + outside)
        if mid == inside or mid == outside:
            break
        if gap(mid) <= eps:
            inside = mid
        else:
            outside = mid
    return inside


def eps_subdifferential(f: ConvexFunction1D, x: float, eps: float) -> Interval:
    """The interval ``{v : f(x) + f*(v) - x v <= eps}``, located by bisection.

    The search starts from the exact subdifferential at ``x``, so ``x`` must
    lie in ``dom_subdiff``.
    """
    x, eps = check_real(x), check_real(eps, "eps")
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    core = f.subdiff(x)
    if core.is_empty:
        raise DomainError(f"{f.name} has no subgradient at {x}")
    if eps == 0:
        return core
    gap = lambda v: fenchel_young_gap(f, x, v)
    lo = core.lo if math.isinf(core.lo) else _expand_edge(gap, core.lo, -1.0, eps)
    hi = core.hi if math.isinf(core.hi) else _expand_edge(gap, core.hi, 1.0, eps)
    return Interval(lo, hi)
