import math

import numpy as np
import pytest

import entb


def bell(m):
    psi = np.zeros(m * m, dtype=complex)
    for j in range(m):
        psi[j * m + j] = 1 / math.sqrt(m)
    return psi


def test_validate_and_dims():
    rho = entb.validate_density(np.eye(4, dtype=complex) / 4, (2, 2))
    assert rho.dims == (2, 2)
    assert not rho.swapped
    assert np.allclose(rho.matrix, np.eye(4) / 4)


def test_errors_carry_kind():
    with pytest.raises(entb.Error) as info:
        entb.validate_density(np.eye(4, dtype=complex) * 0.9 / 4, (2, 2))
    assert info.value.kind == "TraceNotOne"
    assert isinstance(info.value, ValueError)
    with pytest.raises(entb.Error):
        entb.make_family("werner")


def test_bell_bounds_are_tight():
    for m in (2, 3):
        rho = entb.make_family("bell", M=m)
        c = entb.pure_concurrence(bell(m), (m, m))
        assert entb.caf_bound(rho) == pytest.approx(c, abs=1e-8)
        assert entb.cm_bound(rho) == pytest.approx(c, abs=1e-8)
        pair = entb.lemma1_pair(bell(m), (m, m))
        assert entb.lurs_bound(rho, pair) == pytest.approx(c, abs=1e-8)


def test_rearrangements_against_numpy():
    rho = entb.make_family("random_ginibre", M=2, N=3, seed=4)
    x = rho.matrix.reshape(2, 3, 2, 3)
    pt = x.transpose(2, 1, 0, 3).reshape(6, 6)
    r = x.transpose(0, 2, 1, 3).reshape(4, 9)
    assert np.allclose(entb.partial_transpose(rho), pt)
    assert np.allclose(entb.realign(rho), r)
    assert entb.ccnr_value(rho) == pytest.approx(np.linalg.svd(r, compute_uv=False).sum())


def test_tiles_report_and_optimizer():
    rho = entb.make_family("tiles_upb")
    rep = entb.best_bound(rho, loo="standard")
    assert rep["ppt_value"] == pytest.approx(1.0, abs=1e-9)
    assert rep["caf"] == pytest.approx(0.050, abs=0.001)
    res = entb.optimize_loos(rho, restarts=4, steps=150)
    assert res.bound >= res.seed_bound
    assert len(res.restarts) == 4
    assert entb.lurs_bound(rho, res.pair) == pytest.approx(res.bound, abs=1e-9)


def test_sweep_and_upper_estimate(tmp_path):
    pair = entb.lemma1_pair(np.array([1, 0, 0, 0, 1, 0], dtype=complex) / math.sqrt(2), (2, 3))
    rows = entb.sweep("figure1", "p", 0.0, 1.0, 5, loo=pair)
    assert len(rows) == 5
    assert rows[0]["best"] == 0.0
    assert rows[-1]["lurs_bound"] == pytest.approx(1.0)

    rho = entb.make_family("isotropic", M=2, F=0.8)
    upper = entb.upper_estimate(rho, trials=50, seed=1)
    assert entb.caf_bound(rho) <= upper + 1e-8

    path = tmp_path / "state.json"
    entb.write_state(path, rho)
    back = entb.read_state(path)
    assert np.array_equal(back.matrix, rho.matrix)
