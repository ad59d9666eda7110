"""Numerical sweeps of the envelope inequalities and asymptotic behaviour.

Every check returns a :class:`SweepReport`: a list of probed parameter
tuples with what was observed, what was expected and how far off it was.
``deviation`` is an absolute difference for equality claims and the amount
of violation for inequality claims, so a point passes exactly when its
deviation is within the claim's tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import closed_forms as cf
from .convex import Interval, boltzmann_shannon, energy
from .distances import (
    DISTANCES,
    LOG_DOMAIN,
    Mode,
    gbd_equals_bregman_check,
)
from .envelopes import (
    Side,
    envelope,
    make_query,
    oracle_envelope,
    oracle_prox,
    prox,
)

__all__ = [
    "SweepPoint",
    "SweepReport",
    "CLOSED_FAMILIES",
    "FIGURE_XS",
    "FIGURE_GAMMAS",
    "oracle_equivalence",
    "monotone_nets",
    "sweep_gamma_to_zero",
    "sweep_gamma_to_infinity",
    "check_stalled_envelope",
    "check_argmin_relations",
    "check_prox_boundedness",
    "check_distance_axioms",
    "check_energy_identities",
    "check_set_valued_prox",
    "check_bregman_specialization",
    "SUITES",
    "run_suite",
]

inf = math.inf

CLOSED_FAMILIES: tuple[tuple[str, str], ...] = tuple(
    (side, dist) for dist in ("f_log", "kl", "sigma_log", "f_id") for side in ("left", "right")
)
FIGURE_XS = tuple(round(0.05 * k, 10) for k in range(61))
FIGURE_GAMMAS = (0.1, 0.5, 1.0, 2.0, 5.0)
TO_ZERO_LADDER = (1.0, 1e-1, 1e-2, 1e-3, 1e-4)
TO_INFINITY_LADDER = (1.0, 1e1, 1e2, 1e3, 1e4)
MONO_SLACK = 1e-9


@dataclass
class SweepPoint:
    params: dict
    observed: float
    expected: float
    deviation: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "observed": _json_float(self.observed),
            "expected": _json_float(self.expected),
            "deviation": _json_float(self.deviation),
            "pass": self.passed,
        }


@dataclass
class SweepReport:
    claim: str
    tol: float
    points: list[SweepPoint] = field(default_factory=list)
    expected_failure: bool = False

    def add(self, params: dict, observed: float, expected: float, deviation: float) -> None:
        self.points.append(SweepPoint(params, observed, expected, deviation, deviation <= self.tol))

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.points)

    @property
    def pass_rate(self) -> float:
        return sum(p.passed for p in self.points) / len(self.points) if self.points else 1.0

    @property
    def max_dev(self) -> float:
        return max((p.deviation for p in self.points), default=0.0)

    def case(self) -> dict:
        out = {"id": self.claim, "pass": self.passed, "max_dev": _json_float(self.max_dev),
               "points": len(self.points)}
        if self.expected_failure:
            out["expected_failure"] = True
        return out


def _json_float(v: float):
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _absdev(a: float, b: float) -> float:
    if math.isinf(a) or math.isinf(b):
        return 0.0 if a == b else inf
    return abs(a - b)


def _excess(a: float, b: float) -> float:
    """How far ``a <= b`` is violated (0 when it holds)."""
    if a <= b:
        return 0.0
    return a - b


def _theta(x: float) -> float:
    return abs(x - cf.CENTER)


def _inf_theta(dist: str) -> float:
    # theta = |. - 1/2| attains 0 on every catalog domain
    return 0.0


def _distance_at(side: str, dist: str, s: float, point: float) -> float:
    D = DISTANCES[dist]
    return float(D(s, point) if side == "left" else D(point, s))


# -- closed forms against the oracle ---------------------------------------

def oracle_equivalence(side: str, dist: str, xs: Sequence[float] = FIGURE_XS,
                       gammas: Sequence[float] = FIGURE_GAMMAS,
                       env_tol: float = 1e-6, prox_tol: float = 2e-3) -> tuple[SweepReport, SweepReport]:
    """Closed-form envelope and prox set against brute force on an ``(x, gamma)`` grid.

    The envelope deviation is relative, ``|env - oracle| / (1 + |oracle|)``; the
    prox deviation is the Hausdorff distance between the two sets.
    """
    env_rep = SweepReport(f"oracle/{side}/{dist}/env", env_tol)
    prox_rep = SweepReport(f"oracle/{side}/{dist}/prox", prox_tol)
    for g in gammas:
        q = make_query(side, dist, g)
        for x in xs:
            params = {"gamma": g, "x": x}
            e, eo = envelope(q, x), oracle_envelope(q, x)
            env_rep.add(params, e, eo, _absdev(e, eo) / (1.0 + abs(eo)) if math.isfinite(eo) else _absdev(e, eo))
            p, po = prox(q, x).set, oracle_prox(q, x).set
            prox_rep.add(params, p.lo, po.lo, p.hausdorff(po))
    return env_rep, prox_rep


# -- monotone gamma-nets ---------------------------------------------------

def monotone_nets(side: str, dist: str, xs: Sequence[float] = FIGURE_XS,
                  gammas: Sequence[float] = FIGURE_GAMMAS, slack: float = MONO_SLACK) -> SweepReport:
    """``gamma -> env_gamma(x)`` is nonincreasing, below ``theta(x)`` and above ``inf theta``."""
    rep = SweepReport(f"nets/{side}/{dist}", slack)
    gs = sorted(gammas)
    floor = _inf_theta(dist)
    for x in xs:
        envs = [envelope(make_query(side, dist, g), x) for g in gs]
        top = _theta(x)
        for g, e in zip(gs, envs):
            rep.add({"gamma": g, "x": x, "bound": "upper"}, e, top, _excess(e, top))
            rep.add({"gamma": g, "x": x, "bound": "lower"}, e, floor, _excess(floor, e))
        for (g0, e0), (g1, e1) in zip(zip(gs, envs), zip(gs[1:], envs[1:])):
            rep.add({"gamma": g1, "x": x, "previous_gamma": g0}, e1, e0, _excess(e1, e0))
    return rep


# -- asymptotics -----------------------------------------------------------

def sweep_gamma_to_zero(side: str, dist: str, points: Iterable[float],
                        gammas: Sequence[float] = TO_ZERO_LADDER, tol: float = 0.05,
                        check_below: float = 1e-3) -> SweepReport:
    """Recovery of ``theta`` as ``gamma`` decreases.

    Checks that the envelope does not decrease along the descending ladder
    (slack 1e-9) and that, on every rung with ``gamma <= check_below``, both
    ``|env - theta(x)|`` and the distance from the prox selection to ``x``
    are within ``tol``.
    """
    rep = SweepReport(f"to_zero/{side}/{dist}", tol)
    gs = sorted(gammas, reverse=True)
    for x in points:
        prev = None
        for g in gs:
            q = make_query(side, dist, g)
            e = envelope(q, x)
            if prev is not None:
                rep.add({"gamma": g, "x": x, "check": "monotone"}, e, prev, _excess(prev, e + MONO_SLACK))
            prev = e
            if g <= check_below:
                rep.add({"gamma": g, "x": x, "check": "env_gap"}, e, _theta(x), _absdev(e, _theta(x)))
                s = prox(q, x).selected
                d = _distance_at(side, dist, s, x)
                rep.add({"gamma": g, "x": x, "check": "prox_distance"}, d, 0.0, d)
    return rep


def sweep_gamma_to_infinity(side: str, dist: str, points: Iterable[float],
                            gammas: Sequence[float] = TO_INFINITY_LADDER, tol: float = 0.01,
                            check_above: float = 1e3) -> SweepReport:
    """Decrease of the envelope to ``inf theta = 0`` as ``gamma`` grows."""
    rep = SweepReport(f"to_infinity/{side}/{dist}", tol)
    gs = sorted(gammas)
    floor = _inf_theta(dist)
    for x in points:
        prev = None
        for g in gs:
            e = envelope(make_query(side, dist, g), x)
            if prev is not None:
                rep.add({"gamma": g, "x": x, "check": "monotone"}, e, prev, _excess(e, prev + MONO_SLACK))
            prev = e
            if g >= check_above:
                rep.add({"gamma": g, "x": x, "check": "limit"}, e, floor, _excess(e, floor))
    return rep


def check_stalled_envelope(side: str, dist: str, points: Iterable[float],
                           gammas: Sequence[float] = TO_INFINITY_LADDER + (1e-3, 1e-1),
                           tol: float = 1e-12) -> SweepReport:
    """Envelope equal to ``theta`` for every ``gamma``: the non-convergent cases.

    For the sigma distances the envelope never leaves ``theta`` on part of the
    domain, so it cannot decrease to ``inf theta``.  The report passes when
    that stall is observed; it is flagged as an expected failure of convergence.
    """
    rep = SweepReport(f"stalled/{side}/{dist}", tol, expected_failure=True)
    for x in points:
        for g in sorted(gammas):
            e = envelope(make_query(side, dist, g), x)
            rep.add({"gamma": g, "x": x}, e, _theta(x), _absdev(e, _theta(x)))
    return rep


def _domain_grid(dist: str, step: float = 0.01) -> np.ndarray:
    lo = 0.0 if dist in LOG_DOMAIN else -3.0
    n = int(round((3.0 - lo) / step)) + 1
    return np.round(np.linspace(lo, 3.0, n), 12)


def _argmin_set(vals: np.ndarray, grid: np.ndarray, slack: float) -> np.ndarray:
    return grid[vals <= vals.min() + slack]


def check_argmin_relations(dist: str, gamma: float, grid: Sequence[float] | None = None,
                           tol: float = 1e-6) -> SweepReport:
    """``inf theta = inf left env = inf right env`` and argmin containment on a grid."""
    xs = np.asarray(grid if grid is not None else _domain_grid(dist), dtype=float)
    spacing = float(np.min(np.diff(xs)))
    rep = SweepReport(f"argmin/{dist}/gamma={gamma:g}", tol)
    th = np.abs(xs - cf.CENTER)
    left = np.array([envelope(make_query("left", dist, gamma), x) for x in xs])
    right = np.array([envelope(make_query("right", dist, gamma), x) for x in xs])
    rep.add({"check": "inf_left"}, float(left.min()), float(th.min()), abs(left.min() - th.min()))
    rep.add({"check": "inf_right"}, float(right.min()), float(th.min()), abs(right.min() - th.min()))
    arg_th = _argmin_set(th, xs, 1e-12)
    for name, vals in (("left", left), ("right", right)):
        arg_env = _argmin_set(vals, xs, tol)
        for z in arg_th:
            gap = float(np.min(np.abs(arg_env - z)))
            # containment up to one grid spacing
            rep.add({"check": f"argmin_{name}", "z": float(z)}, gap, 0.0, max(0.0, gap - spacing))
    return rep


def check_prox_boundedness(side: str, dist: str, point: float,
                           gammas: Sequence[float] = tuple(10.0 ** k for k in range(-3, 4)),
                           tol: float = 1e-8) -> SweepReport:
    """Prox selections over a wide ``gamma`` range stay in ``{theta <= theta(point)}``."""
    rep = SweepReport(f"prox_bounded/{side}/{dist}/x={point:g}", tol)
    level = _theta(point)
    radius = cf.CENTER + level
    for g in gammas:
        s = prox(make_query(side, dist, g), point).selected
        rep.add({"gamma": g, "check": "sublevel"}, _theta(s), level, _excess(_theta(s), level))
        rep.add({"gamma": g, "check": "radius"}, abs(s), radius, _excess(abs(s), radius))
    return rep


# -- distances -------------------------------------------------------------

_CHAINS = {"id": ("f_id", "fy_energy", "sigma_id"), "log": ("f_log", "kl", "sigma_log")}


def check_distance_axioms(n: int = 41, slack: float = 1e-10) -> SweepReport:
    """Nonnegativity, zero diagonal and ``D^F <= D^{f+f*} <= D^sigma`` on n x n grids."""
    rep = SweepReport("distance_axioms", slack)
    for op, names in _CHAINS.items():
        lo = 0.0 if op == "log" else -2.0
        g = np.linspace(lo, 3.0 if op == "log" else 2.0, n)
        X, Y = np.meshgrid(g, g, indexing="ij")
        vals = [np.asarray(DISTANCES[name](X, Y), dtype=float) for name in names]
        for name, v in zip(names, vals):
            neg = float(np.max(np.where(np.isfinite(v), -v, 0.0)))
            rep.add({"distance": name, "check": "nonnegative"}, -neg, 0.0, max(0.0, neg))
            diag = np.diag(v)
            rep.add({"distance": name, "check": "diagonal"}, float(np.max(np.abs(diag))), 0.0,
                    float(np.max(np.abs(diag))))
        for (a, va), (b, vb) in zip(zip(names, vals), zip(names[1:], vals[1:])):
            with np.errstate(invalid="ignore"):
                viol = np.where(va <= vb, 0.0, va - vb)
            viol = np.nan_to_num(viol, nan=0.0, posinf=np.inf)
            worst = float(np.max(viol))
            rep.add({"check": f"{a}<={b}"}, worst, 0.0, worst)
    return rep


def check_bregman_specialization(tol: float = 1e-9) -> SweepReport:
    """Fenchel-Young distances equal Bregman distances off the excluded set."""
    rep = SweepReport("gbd_equals_bregman", tol)
    e_grid = [(x, y) for x in np.linspace(-2, 2, 21) for y in np.linspace(-2, 2, 21)]
    pos = np.linspace(0.15, 3.0, 20)
    ent_grid = [(x, y) for x in pos for y in pos]
    ent_grid += [(x, y) for x in (-1.0, -0.1) for y in pos] + [(x, 0.0) for x in pos]
    for f, grid in ((energy(), e_grid), (boltzmann_shannon(), ent_grid)):
        for mode in Mode:
            r = gbd_equals_bregman_check(f, grid, mode, tol)
            rep.add({"f": f.name, "mode": mode.value}, r.max_dev, 0.0, r.max_dev)
    return rep


# -- energy and set-valued prox --------------------------------------------

def check_energy_identities(xs: Sequence[float] | None = None,
                            gammas: Sequence[float] = FIGURE_GAMMAS) -> SweepReport:
    """Fitzpatrick-of-Id envelopes are Moreau envelopes with parameter ``2 gamma``;
    sigma-of-Id envelopes equal ``theta`` with identity prox."""
    rep = SweepReport("energy_identities", 1e-10)
    xs = xs if xs is not None else tuple(np.round(np.linspace(-3, 3, 121), 10))
    for g in gammas:
        for side in ("left", "right"):
            for x in xs:
                e = envelope(make_query(side, "f_id", g), x)
                ref = cf.moreau_reference(2.0 * g, cf.CENTER, x)
                rep.add({"side": side, "gamma": g, "x": x, "dist": "f_id"}, e, ref, abs(e - ref))
                pm = cf.moreau_prox(2.0 * g, cf.CENTER, x)
                ps = prox(make_query(side, "f_id", g), x).selected
                rep.add({"side": side, "gamma": g, "x": x, "dist": "f_id", "check": "prox"}, ps, pm, abs(ps - pm))
                q = make_query(side, "sigma_id", g)
                e = envelope(q, x)
                # the sigma identity is exact: 1e-12 is well inside the 1e-10 claim tolerance
                rep.add({"side": side, "gamma": g, "x": x, "dist": "sigma_id"}, e, _theta(x),
                        0.0 if abs(e - _theta(x)) <= 1e-12 else inf)
                s = prox(q, x)
                ok = s.set == Interval.point(x) and s.selected == x
                rep.add({"side": side, "gamma": g, "x": x, "dist": "sigma_id", "check": "prox"},
                        s.selected, x, 0.0 if ok else inf)
    return rep


def check_set_valued_prox(tol: float = 2e-3) -> SweepReport:
    """Right Fitzpatrick-of-log prox at ``x = 0``, ``gamma = 1/e`` is ``[0, 1/2]``."""
    rep = SweepReport("set_valued_prox/right/f_log", tol)
    target = Interval.closed(0.0, cf.CENTER)
    q = make_query("right", "f_log", math.exp(-1.0))
    found = oracle_prox(q, 0.0).set
    rep.add({"source": "oracle", "lo": found.lo, "hi": found.hi}, found.hi, target.hi, found.hausdorff(target))
    closed = prox(q, 0.0).set
    rep.add({"source": "closed_form", "lo": closed.lo, "hi": closed.hi}, closed.hi, target.hi,
            closed.hausdorff(target))
    return rep


# -- suites ----------------------------------------------------------------

_POS_XS = tuple(x for x in FIGURE_XS if x > 0)


def _oracle_suite() -> list[SweepReport]:
    reps: list[SweepReport] = []
    for side, dist in CLOSED_FAMILIES:
        reps.extend(oracle_equivalence(side, dist))
    reps.append(check_set_valued_prox())
    return reps


def _inequality_suite() -> list[SweepReport]:
    reps = [check_distance_axioms(), check_bregman_specialization(), check_energy_identities()]
    for side, dist in CLOSED_FAMILIES + (("left", "sigma_id"), ("right", "sigma_id")):
        reps.append(monotone_nets(side, dist))
    for dist in ("f_id", "kl", "f_log", "sigma_log"):
        reps.append(check_argmin_relations(dist, 1.0))
    for side, dist, point in (("left", "kl", 1.0), ("right", "f_log", 1.0), ("left", "f_id", 0.5),
                              ("right", "kl", 2.0), ("left", "f_log", 2.5)):
        reps.append(check_prox_boundedness(side, dist, point))
    return reps


def _asymptotic_suite() -> list[SweepReport]:
    reps = []
    for dist in ("f_log", "kl"):
        for side in ("left", "right"):
            reps.append(sweep_gamma_to_zero(side, dist, _POS_XS))
            reps.append(sweep_gamma_to_infinity(side, dist, _POS_XS))
    reps.append(sweep_gamma_to_zero("left", "sigma_log", [x for x in FIGURE_XS if x <= 0.5]))
    reps.append(sweep_gamma_to_zero("right", "sigma_log", [x for x in FIGURE_XS if x >= 0.5]))
    reps.append(check_stalled_envelope("left", "sigma_log", [0.9]))
    reps.append(check_stalled_envelope("right", "sigma_log", [0.1, 0.3]))
    reps.append(check_stalled_envelope("left", "sigma_id", [-1.0, 0.2, 0.9, 2.0]))
    return reps


SUITES = {
    "oracle": _oracle_suite,
    "inequalities": _inequality_suite,
    "asymptotics": _asymptotic_suite,
}


def run_suite(name: str) -> dict:
    """Run a named suite (or ``"all"``) and return the JSON-ready report."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}")
    cases = []
    for n in names:
        cases.extend(r.case() for r in SUITES[n]())
    return {"suite": name, "cases": cases, "pass": all(c["pass"] for c in cases)}
