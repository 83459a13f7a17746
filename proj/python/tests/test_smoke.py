import math

import pytest

import lfsync

STAR3 = {"network.topology": "star", "network.m": "3"}


def test_worked_example_gains():
    g = lfsync.solve_gains([5, 1], [6, -5, 1])
    assert g["k"] == pytest.approx(3.0, abs=1e-10)
    assert g["psi"][0] == pytest.approx(-4.0, abs=1e-10)
    assert g["phi"][0] == pytest.approx(10.0, abs=1e-10)
    assert g["tau"] == pytest.approx(-10.0, abs=1e-10)
    assert g["residual"] <= 1e-9
    assert list(g["theta"]) == [g["k"], g["psi"][0], g["phi"][0], g["tau"]]


def test_family_matching_residuals():
    for k in (0.5, 1.0, 2.0, 3.5, 5.0):
        p = lfsync.family_plant(k)
        g = lfsync.solve_gains(p["num"], p["den"], p["gain"])
        assert g["residual"] <= 1e-9
        assert g["k"] == pytest.approx(3.0 / p["gain"], rel=1e-10)
    # feedforward gain scales inversely with the plant gain
    g = lfsync.solve_gains([5, 1], [6, -5, 1], gain=2.0)
    assert g["k"] == pytest.approx(1.5, abs=1e-10)


def test_network_construction_and_levels():
    star = lfsync.build_network("star", 3)
    assert star["q_level"] == [1, 1, 1]
    cyc = lfsync.build_network("cyclic", 9)
    assert cyc["q_level"] == [1, 2, 3, 4, 5, 5, 4, 3, 2]
    # balance: row sums of L equal the leader weights
    resid = abs(cyc["L"].sum(axis=1) - cyc["A_leader"].diagonal()).max()
    assert resid <= 1e-12
    ok, text = lfsync.validate_network("random9", 9)
    assert ok
    assert "PASS" in text


def test_scenario_validation():
    ok, text = lfsync.validate(STAR3)
    assert ok
    assert text


def test_matched_run_is_exact():
    cfg = dict(STAR3, **{"sim.mode": "matched", "sim.T": "5"})
    res = lfsync.simulate(cfg)
    assert res["ok"]
    assert res["status"] == "ok"
    assert res["linf"] <= 1e-8


def test_adaptive_run_and_determinism():
    cfg = dict(STAR3, **{"sim.T": "2"})
    a = lfsync.simulate(cfg)
    b = lfsync.simulate(cfg)
    assert a["ok"] and b["ok"]
    assert math.isfinite(a["l2"]) and a["l2"] > 0.0
    assert len(a["trace_hash"]) == 16
    assert a["trace_hash"] == b["trace_hash"]
    assert '"status": "ok"' in a["manifest"]


def test_trajectory_arrays():
    out = lfsync.run(dict(STAR3, **{"sim.T": "2"}))
    samples = len(out["t"])
    assert samples == 201
    assert out["e"].shape == (samples, 3)
    assert out["y"].shape == (samples, 3)
    assert out["u"].shape == (samples, 3)
    assert len(out["y_leader"]) == samples
    assert abs(out["e"][0]).max() == 0.0  # zero initial conditions
    assert len(out["theta_norm"]) == samples


def test_sweep_grid():
    res = lfsync.sweep({"sim.T": "2"}, ["star"], [1, 3], ["gradient"],
                       workers=2)
    assert res["all_ok"]
    assert len(res["cells"]) == 2
    assert res["cells"][0]["name"] == "star_m1_gradient"
    assert res["table"].startswith("topology")


def test_bad_config_is_reported():
    res = lfsync.simulate({"network.m": "two"})
    assert not res["ok"]
    assert res["status"] == "error"
    assert "network.m" in res["error"]
    with pytest.raises(RuntimeError):
        lfsync.run({"network.m": "two"})
