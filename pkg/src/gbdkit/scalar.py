"""Extended-real helpers, the principal Lambert W branch and tolerance policy.

Extended reals are plain Python floats: ``math.inf`` and ``-math.inf`` stand
for the infinite values.  NaN is never a legal value; every entry point that
accepts reals rejects it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DomainError",
    "ContractViolation",
    "EmptyDomainError",
    "ExtReal",
    "Tolerance",
    "DEFAULT_TOL",
    "check_real",
    "ext_add",
    "ext_scale",
    "lambert_w",
    "lambert_w_exp",
    "lambert_w_scaled",
]

ExtReal = float

INV_E = math.exp(-1.0)
# Arguments this far below -1/e are treated as rounding noise at the branch point.
_BRANCH_SLACK = 1e-15
_W_MAX_ITER = 50
_W_RTOL = 1e-12


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ContractViolation(ArithmeticError):
    """An operation was asked to form an undefined extended-real value."""


class EmptyDomainError(ValueError):
    """A minimization problem has no point with a finite objective value."""


@dataclass(frozen=True)
class Tolerance:
    """Absolute plus relative slack used for comparisons against a reference."""

    abs: float = 1e-10
    rel: float = 0.0

    def __post_init__(self):
        if self.abs < 0 or self.rel < 0 or self.abs + self.rel <= 0:
            raise ValueError("tolerance needs abs >= 0, rel >= 0 and abs + rel > 0")

    def bound(self, reference: float) -> float:
        return self.abs + self.rel * abs(reference)

    def close(self, a: float, b: float) -> bool:
        if math.isinf(a) or math.isinf(b):
            return a == b
        return abs(a - b) <= self.bound(b)

    def leq(self, a: float, b: float) -> bool:
        """``a <= b`` up to slack (infinities compare exactly)."""
        if math.isinf(a) or math.isinf(b):
            return a <= b
        return a <= b + self.bound(b)


DEFAULT_TOL = Tolerance()


def check_real(x: float, name: str = "x") -> float:
    x = float(x)
    if math.isnan(x):
        raise DomainError(f"{name} is NaN")
    return x


def ext_add(a: ExtReal, b: ExtReal) -> ExtReal:
    a, b = check_real(a, "a"), check_real(b, "b")
    if math.isinf(a) and math.isinf(b) and a != b:
        raise ContractViolation("+inf + -inf is undefined")
    return a + b


def ext_scale(c: float, a: ExtReal) -> ExtReal:
    c, a = check_real(c, "c"), check_real(a, "a")
    if not c > 0:
        raise DomainError("scale factor must be positive")
    return c * a


def _w_initial(x: np.ndarray) -> np.ndarray:
    w = np.log1p(np.maximum(x, -0.25))
    big = x > 3.0
    if big.any():
        lx = np.log(x[big])
        w[big] = lx - np.log(lx)
    near = x < -0.25
    if near.any():
        # branch-point series in p = sqrt(2(e x + 1))
        p = np.sqrt(np.maximum(2.0 * (math.e * x[near] + 1.0), 0.0))
        w[near] = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    return w


def _lambert_w_array(x: np.ndarray) -> np.ndarray:
    w = _w_initial(x)
    at_branch = x <= -INV_E
    tol = _W_RTOL * (1.0 + np.abs(x))
    active = ~at_branch
    for _ in range(_W_MAX_ITER):
        if not active.any():
            break
        wa, xa = w[active], x[active]
        ew = np.exp(wa)
        f = wa * ew - xa
        wp1 = wa + 1.0
        denom = ew * wp1 - (wa + 2.0) * f / (2.0 * wp1)
        step = np.where(denom != 0.0, f / np.where(denom != 0.0, denom, 1.0), 0.0)
        wn = np.maximum(wa - step, -1.0)
        w[active] = wn
        res = np.abs(wn * np.exp(wn) - xa)
        done = (res <= 0.25 * tol[active]) | (wn == wa)
        idx = np.flatnonzero(active)
        active[idx[done]] = False
    w[at_branch] = -1.0
    return w


def lambert_w(x):
    """Principal branch of the Lambert W function on ``[-1/e, inf)``.

    Halley iteration from a log-type start (or the branch-point series below
    -1/4), stopped once ``|w e^w - x|`` is well under ``1e-12 (1 + |x|)``.
    Accepts a scalar or an array; scalars come back as ``float``.

    Raises
    ------
    DomainError
        If any argument is NaN or lies below ``-1/e`` by more than 1e-15.
    """
    arr = np.asarray(x, dtype=float)
    if np.isnan(arr).any():
        raise DomainError("lambert_w of NaN")
    if (arr < -INV_E - _BRANCH_SLACK).any():
        raise DomainError("lambert_w is real only for x >= -1/e")
    flat = arr.reshape(-1).copy()
    out = np.empty_like(flat)
    pos_inf = np.isposinf(flat)
    out[pos_inf] = np.inf
    finite = ~pos_inf
    out[finite] = _lambert_w_array(flat[finite])
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


_EXP_DIRECT_MAX = 690.0


def lambert_w_exp(L):
    """``W(e^L)`` without forming ``e^L`` when it would overflow.

    Below ``L = 690`` this is ``lambert_w(exp(L))``; above, Newton on
    ``w + log w = L`` from ``L - log L`` (a handful of steps suffice there).
    """
    arr = np.asarray(L, dtype=float)
    if np.isnan(arr).any():
        raise DomainError("lambert_w_exp of NaN")
    flat = arr.reshape(-1)
    out = np.empty_like(flat)
    direct = flat <= _EXP_DIRECT_MAX
    out[direct] = lambert_w(np.exp(flat[direct]))
    big = flat[~direct]
    with np.errstate(invalid="ignore"):
        w = big - np.log(big)
        for _ in range(8):
            w = w - (w + np.log(w) - big) / (1.0 + 1.0 / w)
    out[~direct] = np.where(np.isposinf(big), np.inf, w)
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def lambert_w_scaled(x, c):
    """``W(x e^c)`` for arrays ``x > 0`` and ``c``.

    The product is formed only when it is comfortably representable; otherwise
    the log form ``lambert_w_exp(log x + c)`` is used.
    """
    x, c = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(c, dtype=float))
    with np.errstate(over="ignore", under="ignore"):
        arg = x * np.exp(c)
    direct = (arg > 1e-300) & (arg < 1e300)
    w = np.empty_like(arg)
    w[direct] = lambert_w(arg[direct])
    w[~direct] = lambert_w_exp(np.log(x[~direct]) + c[~direct])
    return w
