import csv
import io
import math

import pytest

import d2dcache as dc


def test_harmonic_and_zipf():
    assert dc.harmonic_sum(0.5, 1, 4) == pytest.approx(2.784457050376173, rel=1e-14)
    lo, hi = dc.harmonic_bounds(1.0, 1, 10)
    assert lo == pytest.approx(math.log(11))
    assert hi == pytest.approx(math.log(10) + 1)
    pmf = dc.zipf_pmf(0.5, 2)
    assert pmf == pytest.approx([0.585786437626905, 0.4142135623730951])


def test_cache_distribution():
    dist = dc.optimal_cache_distribution(0.5, 10, 1, 5)
    assert dist.m_star == 8
    assert sum(dist.pc) == pytest.approx(1.0, abs=1e-10)
    assert 0.0 < dc.hit_probability(0.5, 10, 1, 5) < 1.0
    assert 0.0 < dc.paley_zygmund_lower_bound(0.4, 100, 1, 10) <= 1.0


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        dc.zipf_pmf(1.5, 10)
    with pytest.raises(dc.ConfigError):
        dc.optimal_cache_distribution(0.5, 10, 1, 2)
    with pytest.raises(ValueError):
        dc.simulate(0.5, 10, 100, g_c=9)


def test_simulate_degenerate_library():
    p = dc.simulate(0.5, 1, 400, g_c=4, K=4, realizations=10, seed=3)
    assert p["p_out"] == 0.0
    assert p["t_min_norm"] == 0.0625
    assert p["seed"] == 3


def test_sweep_is_deterministic():
    a, warn = dc.sweep(0.5, 100, 400, g_c=[4, 16, 30], K=4, realizations=20, seed=5)
    b, _ = dc.sweep(0.5, 100, 400, g_c=[4, 16, 30], K=4, realizations=20, seed=5)
    assert a == b
    assert len(a) == 2
    assert len(warn) == 1


def test_theory():
    assert dc.solve_fixed_point(0.5) == pytest.approx(0.76268856085033898, rel=1e-12)
    c = dc.achievable_constants(0.5, 1)
    assert c["D"] == pytest.approx(0.41997, abs=1e-4)
    curve = dc.outer_bound_curve(0.6, 1000, 10000, p=[0.2, 0.5, 0.99])
    ts = [pt["t"] for pt in curve]
    assert all(pt["feasible"] for pt in curve)
    assert ts == sorted(ts)
    ach = dc.achievable_curve(0.5, 1000, 10000, p=[0.7, 1.0])
    assert [pt["regime"] for pt in ach] == ["R2", "R4"]


def test_verify_schedules():
    rep = dc.verify_schedules(0.5, 100, 2500, 25, slots=50)
    assert rep["violations"] == 0
    assert rep["links"] > 0


def test_cli_csv_schema():
    code, out, err = dc.run_cli(["theory", "--gamma", "0.5", "--points", "10"])
    assert code == 0, err
    rows = list(csv.DictReader(io.StringIO(out)))
    assert tuple(rows[0].keys()) == dc.CSV_COLUMNS
    assert all(r["p_out_sim"] == "" for r in rows)
    code, _, err = dc.run_cli(["nope"])
    assert code == 1
