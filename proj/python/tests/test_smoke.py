import math

import numpy as np
import pytest

import sketchls


def test_generate_problem_invariants():
    p = sketchls.generate_problem(200, 8, 1e3, 1e-2, seed=3)
    a, b, x = p["a"], p["b"], p["x_star"]
    assert a.shape == (200, 8)
    assert abs(np.linalg.norm(x) - 1.0) < 1e-14
    assert abs(np.linalg.norm(b - a @ x) - 1e-2) < 1e-12
    assert np.linalg.cond(a) == pytest.approx(1e3, rel=1e-2)
    assert np.linalg.norm(a.T @ (b - a @ x)) < 1e-12 * 1e-2


def test_half_rounding():
    out = sketchls.round_to(np.array([1.0, 0.1, 70000.0]), "half")
    assert out[0] == 1.0
    assert out[1] == 0.0999755859375
    assert math.isinf(out[2])
    assert np.array_equal(out[:2], np.float16([1.0, 0.1]).astype(np.float64))


@pytest.mark.parametrize("method", ["qr", "ne", "sne", "pne", "hpne"])
def test_solvers_agree_with_numpy(method):
    p = sketchls.generate_problem(400, 10, 1e2, 1e-3, seed=5)
    ref = np.linalg.lstsq(p["a"], p["b"], rcond=None)[0]
    r = sketchls.solve(p["a"], p["b"], method=method, precision="double", x_star=p["x_star"])
    assert np.linalg.norm(r["x_hat"] - ref) / np.linalg.norm(ref) < 1e-10
    assert r["relative_error"] < 1e-10
    assert r["bounds"]["ls"] > 0


def test_automatic_precision():
    p = sketchls.generate_problem(1000, 20, 1e2, 1e-6, seed=1)
    r = sketchls.solve(p["a"], p["b"], method="pne", precision="auto", x_star=p["x_star"])
    assert r["precision"] == "half"
    assert r["kappa0"] < 4
    assert r["relative_error"] <= r["bounds"]["pne_new"]


def test_not_normal_requires_b():
    p = sketchls.generate_problem(100, 5, 10.0, 1e-3, seed=2)
    with pytest.raises(ValueError):
        sketchls.solve(p["a"], p["b"], method="nne")
    r = sketchls.solve(p["a"], p["b"], method="nne", b_matrix=p["a"])
    ne = sketchls.solve(p["a"], p["b"], method="ne")
    assert np.linalg.norm(r["x_hat"] - ne["x_hat"]) / np.linalg.norm(ne["x_hat"]) < 1e-12


def test_errors_are_translated():
    p = sketchls.generate_problem(300, 10, 1e10, 1e-3, seed=4)
    with pytest.raises(sketchls.SketchlsError, match="NotPositiveDefinite"):
        sketchls.solve(p["a"], p["b"], method="ne")


def test_dct_matches_scipy():
    from scipy.fft import dct

    x = np.random.default_rng(0).standard_normal(37)
    assert np.allclose(sketchls.orthogonal_transform(x, "dct2"), dct(x, norm="ortho"), atol=1e-13)


def test_sketch_shape_and_determinism():
    a = np.random.default_rng(1).standard_normal((128, 4))
    s1 = sketchls.sketch(a, 12, seed=9)
    s2 = sketchls.sketch(a, 12, seed=9)
    assert s1.shape == (12, 4)
    assert np.array_equal(s1, s2)


def test_condition_and_bounds():
    a = np.diag([1.0, 1e-3])
    assert sketchls.condition_number(np.vstack([a, np.zeros((3, 2))])) == pytest.approx(1e3)
    assert sketchls.select_precision(6.0) == "single"
    assert sketchls.eta1(1e8, 2.0**-23) == pytest.approx(1.0915673020228751)
    b = sketchls.evaluate_bounds({"kappa_a": 1e4, "eps_a": 2.0**-52, "res_ratio_a": 1e-2}, "qr")
    assert b["ls"] == pytest.approx(2.2426505097428162e-10)


def test_sweep_and_benchmark():
    rows = sketchls.run_sweep(300, 8, 1e4, [1e-8, 1e-2], methods=["qr", "pne"], trials=1)
    assert len(rows) == 4
    assert set(rows[0]) == set(sketchls.sweep_columns())
    assert rows[0]["kappa_ap"] is None
    assert rows[1]["kappa_ap"] is not None
    bench = sketchls.run_benchmark(256, [8], 1e3)
    assert [r["method"] for r in bench] == ["qr", "pne_double", "pne_auto"]
    assert all(r["median_ms"] > 0 for r in bench)
