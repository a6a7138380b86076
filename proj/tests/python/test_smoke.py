"""Smoke tests for the python bindings."""

import numpy as np
import pytest

import vecsub as vs


def test_fixture_orders():
    assert vs.fixture_names() == ["ex1", "ex2", "a4", "a6", "au2", "au3"]
    for name, order in [("ex1", 4), ("a4", 4), ("au2", 4)]:
        assert vs.sum_rule_order(vs.fixture(name))["order"] == order


def test_filter_roundtrip(tmp_path):
    f = vs.bspline_filter(4)
    assert f.entry([0], 0, 0) == "3/8"
    path = str(tmp_path / "b4.flt")
    f.save(path)
    assert vs.load_filter(path) == f


def test_balanced_construction_matches_fixture():
    a4 = vs.balanced_from_scalar(
        vs.tensor_filter(vs.bspline_filter(4), vs.bspline_filter(4)), "quincunx"
    )
    assert a4 == vs.fixture("a4")


def test_symmetry():
    assert vs.check_symmetry(vs.fixture("ex1"), 2, "D6")
    assert vs.check_symmetry(
        vs.fixture("a4"), 2, "D4", [["0", "0"], ["1/2", "1/2"]]
    )


def test_run_scheme_hat_samples():
    hat = vs.bspline_filter(2)
    out = vs.run_scheme(hat, 2, vs.delta_row(1, 1, 0), vs.delta_col(1, 1, 0), [0], 5)
    assert out["beta"] == "1"
    values = out["values"][:, 0]
    lo = out["box_lo"][0]
    k0 = -lo  # index of the origin
    assert values[k0] == pytest.approx(1.0)
    assert values[k0 + 16] == pytest.approx(0.5)  # hat(1/2) at level 5
    assert np.max(values) == pytest.approx(1.0)


def test_phi_grid_matches_bspline():
    b4 = vs.bspline_filter(4)
    g = vs.phi_grid(b4, 2, 3)
    values = g["values"][:, 0]
    k0 = -g["box_lo"][0]
    assert values[k0] == pytest.approx(2.0 / 3.0)
    assert values[k0 + 8] == pytest.approx(1.0 / 6.0)


def test_errors_are_typed():
    with pytest.raises(vs.MathError):
        vs.sum_rule_order(vs.delta(1, 2))
