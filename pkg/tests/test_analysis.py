import json
import math

import pytest

from gbdkit.analysis import (
    SweepReport,
    check_argmin_relations,
    check_bregman_specialization,
    check_distance_axioms,
    check_energy_identities,
    check_prox_boundedness,
    check_set_valued_prox,
    check_stalled_envelope,
    monotone_nets,
    run_suite,
    sweep_gamma_to_infinity,
    sweep_gamma_to_zero,
)
from gbdkit.envelopes import envelope, make_query, prox


def test_to_zero_left_fitz_log():
    ladder = (1.0, 0.1, 0.01, 0.001)
    rep = sweep_gamma_to_zero("left", "f_log", [1.3], ladder)
    assert rep.passed
    envs = [envelope(make_query("left", "f_log", g), 1.3) for g in ladder]
    assert envs == sorted(envs)
    assert abs(envs[-1] - 0.8) <= 0.05


def test_to_zero_one_sided_sigma_and_kl():
    assert sweep_gamma_to_zero("left", "sigma_log", [0.3]).passed
    assert sweep_gamma_to_zero("right", "kl", [1.0]).passed


def test_to_infinity_examples():
    assert sweep_gamma_to_infinity("left", "f_log", [2.0]).passed
    assert sweep_gamma_to_infinity("left", "kl", [2.0]).passed
    assert envelope(make_query("left", "f_log", 1e3), 2.0) <= 0.01


def test_sigma_log_does_not_converge_to_infimum():
    # the convergence claim fails here and the stall check records why
    assert not sweep_gamma_to_infinity("left", "sigma_log", [0.9]).passed
    stall = check_stalled_envelope("left", "sigma_log", [0.9])
    assert stall.passed and stall.expected_failure
    assert envelope(make_query("left", "sigma_log", 1e3), 0.9) == 0.4


def test_sigma_id_is_gamma_invariant():
    assert check_stalled_envelope("right", "sigma_id", [-2.0, 0.5, 3.0]).passed


@pytest.mark.parametrize("dist", ["kl", "f_id", "sigma_log", "f_log"])
def test_argmin_relations(dist):
    rep = check_argmin_relations(dist, 1.0)
    assert rep.passed, rep.points


def test_prox_boundedness_examples():
    rep = check_prox_boundedness("left", "kl", 1.0)
    assert rep.passed
    for g in (1e-3, 1.0, 1e3):
        assert 0.0 <= prox(make_query("left", "kl", g), 1.0).selected <= 1.0
    assert check_prox_boundedness("right", "f_log", 1.0).passed
    for g in (1e-3, 1.0, 1e3):
        assert prox(make_query("left", "f_id", g), 0.5).selected == 0.5


def test_monotone_nets_pass_for_closed_families():
    for side in ("left", "right"):
        for dist in ("f_log", "kl", "sigma_log", "f_id"):
            assert monotone_nets(side, dist, xs=[0.0, 0.2, 0.5, 1.3, 3.0]).passed


def test_distance_and_bregman_checks():
    assert check_distance_axioms().passed
    assert check_bregman_specialization().passed
    assert check_energy_identities(xs=[-1.0, 0.0, 0.5, 2.0], gammas=[0.5, 2.0]).passed
    assert check_set_valued_prox().passed


def test_report_accounting():
    rep = SweepReport("demo", 0.1)
    rep.add({"i": 0}, 1.0, 1.05, 0.05)
    rep.add({"i": 1}, 1.0, 1.5, 0.5)
    assert not rep.passed
    assert rep.pass_rate == 0.5
    assert rep.max_dev == 0.5
    assert rep.case() == {"id": "demo", "pass": False, "max_dev": 0.5, "points": 2}
    rep.add({"i": 2}, math.inf, 0.0, math.inf)
    assert rep.case()["max_dev"] == "inf"


def test_run_suite_shape():
    out = run_suite("asymptotics")
    json.dumps(out)
    assert out["suite"] == "asymptotics" and out["pass"]
    assert {"id", "pass", "max_dev"} <= set(out["cases"][0])
    assert any(c.get("expected_failure") for c in out["cases"])
    with pytest.raises(KeyError):
        run_suite("bogus")
