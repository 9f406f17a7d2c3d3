import json
import math
import os
from pathlib import Path

import numpy as np
import pytest

import fracsis as fs

DATO1 = dict(beta=0.7, gamma=0.2, s0=8.0, i0=2.0)
CF1 = dict(beta=0.7, gamma=0.2, s0=6.0, i0=4.0)


def test_gamma_and_field():
    assert fs.gamma_function(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert fs.sis_field(8.0, 2.0, fs.EpidemicParams(**DATO1)) == pytest.approx(-0.72, rel=1e-15)


def test_weights():
    a = fs.l1_weights(0.5, 3)
    assert isinstance(a, np.ndarray)
    np.testing.assert_allclose(a, [1.0, math.sqrt(2) - 1, math.sqrt(3) - math.sqrt(2)], rtol=1e-15)


def test_caputo_arrays_and_conservation():
    tr = fs.solve_caputo(fs.EpidemicParams(**DATO1), fs.CaputoOrders(0.5, 0.5), fs.GridSpec(20.0, 1000))
    assert len(tr) == 1001
    assert tr.t[0] == 0.0 and tr.t[-1] == 20.0
    assert np.max(np.abs(tr.N - 10.0)) <= 1e-9
    assert tr.to_csv().startswith("t,S,I,N\n0,8,2,10\n")


def test_existence():
    p = fs.EpidemicParams(**DATO1)
    assert fs.existence_horizon(p, fs.CaputoOrders(1, 1)) == pytest.approx(10 / 27, abs=1e-10)
    box = fs.invariance_box(fs.EpidemicParams(0.1, 0.2, 6, 4), fs.CaputoOrders(1, 1))
    assert box.horizon == pytest.approx(5 / 3, rel=1e-12)
    assert box.contains(7.0, 4.0)


def test_cf_model():
    p = fs.EpidemicParams(**CF1)
    order = fs.CFOrder(0.5)
    assert fs.cf_constants(p, order).p_alpha == pytest.approx(8.44, rel=1e-14)
    eq = fs.cf_equilibria(p, order)
    assert eq.i_star == pytest.approx(9.377777777777778, rel=1e-13)
    assert eq.n_monotonicity == "increasing"
    tr = fs.solve_cf(p, order, fs.GridSpec(200.0, 2000))
    assert abs(tr.I[-1] - eq.i_star) <= 1e-3
    assert fs.invert_alpha(p, fs.cf_limit_total(p, fs.CFOrder(0.8))) == pytest.approx(0.8, abs=1e-9)
    assert fs.invert_alpha(p, fs.cf_limit_total(p, fs.CFOrder(0.8)), lambda a: 1.0) == pytest.approx(0.8, abs=1e-9)


def test_integrate_scalar_callback():
    ys = fs.integrate_scalar(lambda t, y: -y, 1.0, fs.GridSpec(1.0, 10))
    assert ys[-1] == pytest.approx(math.exp(-1.0), rel=1e-8)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        fs.EpidemicParams(-1.0, 0.2, 1.0, 1.0)
    with pytest.raises(fs.AssumptionError):
        fs.cf_constants(fs.EpidemicParams(0.7, 2.0, 6.0, 4.0), fs.CFOrder(0.5))
    with pytest.raises(fs.SolverError):
        fs.solve_caputo(fs.EpidemicParams(0.01, 50.0, 0.0, 1.0), fs.CaputoOrders(0.4, 1.0), fs.GridSpec(10.0, 10))
    with pytest.raises(fs.ScenarioError):
        fs.run_scenario_json('{"model": "caputo", "betta": 1}')


def test_scenario_file_runs():
    root = Path(os.environ.get("FRACSIS_SCENARIOS", Path(__file__).resolve().parents[2] / "scenarios"))
    text = (root / "fig_cfcc1.json").read_text()
    members = fs.run_scenario_json(text)
    assert [m["label"] for m in members] == [s["label"] for s in json.loads(text)["sweep"]]
    for m in members:
        assert m["caputo"] is not None and m["cf"] is not None
        np.testing.assert_array_equal(m["caputo"].t, m["cf"].t)


def test_validate():
    report = fs.validate()
    assert report["all_passed"]
    assert not fs.validate(corrupt_weights=True)["all_passed"]
