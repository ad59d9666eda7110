import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gbdkit.convex import Interval
from gbdkit.envelopes import make_query, objective
from gbdkit.oracle import SearchWindow, brute_interval_argmin, brute_min
from gbdkit.scalar import DomainError, EmptyDomainError

W03 = SearchWindow(0.0, 3.0)


def box(lo, hi, inner):
    def f(x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= lo) & (x <= hi), inner(x), np.inf)
    return f


def test_brute_min_parabola():
    x, v = brute_min(lambda x: (x - 1.0) ** 2, W03)
    assert x == pytest.approx(1.0, abs=1e-6)
    assert v == pytest.approx(0.0, abs=1e-6)


def test_brute_min_moreau_piece():
    x, v = brute_min(lambda x: abs(x - 0.5) + (x - 1.0) ** 2 / 2, W03)
    assert x == pytest.approx(0.5, abs=1e-6)
    assert v == pytest.approx(0.125, abs=1e-9)


def test_brute_min_respects_domain():
    x, v = brute_min(box(1.0, 2.0, lambda x: -x), W03)
    assert 1.0 <= x <= 2.0
    assert v == pytest.approx(-2.0)


def test_brute_min_scalar_only_objective():
    # objectives that reject arrays are evaluated point by point
    x, _ = brute_min(lambda x: math.cos(x), SearchWindow(0.0, 6.0))
    assert x == pytest.approx(math.pi, abs=1e-6)


def test_brute_min_empty_domain():
    with pytest.raises(EmptyDomainError):
        brute_min(lambda x: np.full_like(np.asarray(x, dtype=float), np.inf), W03)


def test_brute_min_rejects_nan():
    with pytest.raises(DomainError):
        brute_min(lambda x: np.full_like(np.asarray(x, dtype=float), np.nan), W03)


def test_interval_argmin_flat_box():
    s = brute_interval_argmin(box(0.0, 1.0, np.zeros_like), SearchWindow(-1.0, 2.0), 1e-9)
    assert s.hausdorff(Interval.closed(0.0, 1.0)) <= 1e-6


def test_interval_argmin_degenerate():
    s = brute_interval_argmin(lambda x: (x - 1.0) ** 2, W03, 1e-9)
    assert s.hausdorff(Interval.point(1.0)) <= 1e-4


def test_interval_argmin_right_fitz_log_tie():
    q = make_query("right", "f_log", 1 / math.e)
    s = brute_interval_argmin(objective(q, 0.0), SearchWindow(0.0, 50.0), 1e-9)
    assert s.hausdorff(Interval.closed(0.0, 0.5)) <= 2e-3


def test_window_validation():
    with pytest.raises(ValueError):
        SearchWindow(1.0, 1.0)
    with pytest.raises(ValueError):
        SearchWindow(0.0, 1.0, coarse_points=10)
    assert SearchWindow(0.0, 2.0, coarse_points=201).spacing == pytest.approx(0.01)


@settings(max_examples=50, deadline=None)
@given(c=st.floats(min_value=-40, max_value=40), a=st.floats(min_value=0.01, max_value=10))
def test_brute_min_quadratic_anywhere(c, a):
    x, v = brute_min(lambda x: a * (x - c) ** 2 + 1.0, SearchWindow(-50.0, 50.0))
    assert abs(x - c) <= 1e-5
    assert v == pytest.approx(1.0, abs=1e-8)


@settings(max_examples=50, deadline=None)
@given(lo=st.floats(min_value=-20, max_value=10), width=st.floats(min_value=0.5, max_value=20))
def test_interval_argmin_recovers_plateau(lo, width):
    hi = lo + width

    def f(x):
        x = np.asarray(x, dtype=float)
        return np.maximum(0.0, np.maximum(lo - x, x - hi))

    s = brute_interval_argmin(f, SearchWindow(-50.0, 50.0), 1e-9)
    assert s.hausdorff(Interval.closed(lo, hi)) <= 2e-3
