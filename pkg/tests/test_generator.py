from fractions import Fraction
import json
import math

import numpy as np
import pytest

import mcx_tools as mcx
from mcx_tools._src.generator.generate import (
    canonical_form,
    draw_taskset,
    log_uniform_periods,
    round_half_up,
)
from mcx_tools._src.model.io import list_taskset_files


@pytest.fixture
def params() -> mcx.GenParams:
    return mcx.GenParams(n=4, t_min=5, t_max=12, p_hi=0.5, u_target=0.8, count=5, seed=3)


def test_sample_bounded_simplex_edges():
    rng = np.random.default_rng(0)
    assert mcx.sample_bounded_simplex(1, 0.5, [0], [1], rng) == [Fraction(1, 2)]
    assert mcx.sample_bounded_simplex(2, 0.5, [0.25, 0.25], [1, 1], rng) == [
        Fraction(1, 4),
        Fraction(1, 4),
    ]
    assert mcx.sample_bounded_simplex(2, 1.5, [0, 0.5], [1, 0.5], rng) == [
        Fraction(1),
        Fraction(1, 2),
    ]


@pytest.mark.parametrize("seed", range(25))
def test_sample_bounded_simplex_sum_and_bounds(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7))
    lo = [Fraction(int(rng.integers(0, 20)), 100) for _ in range(n)]
    hi = [a + Fraction(int(rng.integers(0, 80)), 100) for a in lo]
    total = sum(lo) + (sum(hi) - sum(lo)) * Fraction(int(rng.integers(0, 101)), 100)
    u = mcx.sample_bounded_simplex(n, total, lo, hi, rng)
    assert sum(u) == total
    assert all(a <= x <= b for a, x, b in zip(lo, u, hi))


@pytest.mark.parametrize("seed", range(10))
def test_sample_bounded_simplex_falls_back_to_clamping(seed):
    rng = np.random.default_rng(seed)
    u = mcx.sample_bounded_simplex(3, Fraction(27, 10), [0] * 3, [1] * 3, rng, max_tries=1)
    assert sum(u) == Fraction(27, 10)
    assert all(0 <= x <= 1 for x in u)


def test_sample_bounded_simplex_rejects_infeasible_bounds():
    rng = np.random.default_rng(0)
    with pytest.raises(mcx.InfeasibleBoundsError):
        mcx.sample_bounded_simplex(2, 0.3, [0.2, 0.2], [1, 1], rng)
    with pytest.raises(mcx.InfeasibleBoundsError):
        mcx.sample_bounded_simplex(2, 2.5, [0, 0], [1, 1], rng)
    with pytest.raises(mcx.InfeasibleBoundsError):
        mcx.sample_bounded_simplex(1, 0.5, [0.6], [0.4], rng)
    with pytest.raises(ValueError, match="components"):
        mcx.sample_bounded_simplex(2, 0.5, [0], [1, 1], rng)


def test_grid_range():
    assert len(mcx.grid_range(0.8, 1, 0.01)) == 21
    assert mcx.grid_range(0.8, 1.0, 0.05) == [0.8, 0.85, 0.9, 0.95, 1.0]
    assert mcx.grid_range(3, 9, 3) == [3, 6, 9]
    assert mcx.grid_range(0.5, 0.5, 0.1) == [0.5]
    with pytest.raises(ValueError):
        mcx.grid_range(1, 0, 0.1)
    with pytest.raises(ValueError):
        mcx.grid_range(0, 1, 0)


def test_round_half_up():
    assert round_half_up(Fraction(5, 2)) == 3
    assert round_half_up(Fraction(3, 2)) == 2
    assert round_half_up(Fraction(7, 3)) == 2
    assert round_half_up(Fraction(0)) == 0


def test_log_uniform_periods():
    rng = np.random.default_rng(0)
    t_min, t_max, draws = 1, 20, 20000
    periods = np.array(log_uniform_periods(rng, draws, t_min, t_max))
    assert periods.min() >= t_min and periods.max() <= t_max
    observed = np.bincount(periods, minlength=t_max + 1)[t_min:]
    ks = np.arange(t_min, t_max + 1)
    expected = draws * np.log((ks + 1) / ks) / math.log((t_max + 1) / t_min)
    chi2 = float(((observed - expected) ** 2 / expected).sum())
    # 19 degrees of freedom
    assert chi2 < 60


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n": 0},
        {"t_min": 13},
        {"t_min": 0},
        {"p_hi": 1.5},
        {"u_target": -0.1},
        {"count": 0},
        {"seed": -1},
    ],
)
def test_gen_params_validation(kwargs):
    base = dict(n=4, t_min=5, t_max=12, p_hi=0.5, u_target=0.8)
    base.update(kwargs)
    with pytest.raises(ValueError, match="Invalid generation parameters"):
        mcx.GenParams(**base)


def test_generate_accepts_only_valid_sets(params):
    report = mcx.generate(params)
    assert len(report.accepted) == params.count
    assert report.attempts == len(report.accepted) + sum(report.dropped.values())
    assert len({canonical_form(ts) for ts in report.accepted}) == params.count
    assert len({ts.name for ts in report.accepted}) == params.count
    for ts in report.accepted:
        u = mcx.utilization_summary(ts)
        assert ts.n == params.n
        assert ts.implicit_deadlines
        assert u.u_lo <= 1 and u.u_hi <= 1
        assert abs(u.u_avg - Fraction(params.u_target)) <= Fraction(5, 1000) + Fraction(1, 10**9)
        assert {t.level for t in ts} == {mcx.Criticality.LO, mcx.Criticality.HI}
        assert all(params.t_min <= t.period <= params.t_max for t in ts)
        assert all(1 <= t.c_lo <= t.c_hi <= t.period for t in ts)
        assert mcx.validate(ts) == []


def test_generate_is_deterministic(params):
    first, second = mcx.generate(params), mcx.generate(params)
    assert first.accepted == second.accepted
    assert first.manifest() == second.manifest()
    other = mcx.generate(mcx.GenParams(**{**params.__dict__, "seed": 4}))
    assert other.accepted != first.accepted


def test_accepted_sets_can_be_regenerated(params):
    report = mcx.generate(params)
    for ts, attempt in zip(report.accepted, report.attempts_of):
        again, reason = draw_taskset(params, attempt)
        assert reason is None
        assert again.tasks == ts.tasks


def test_all_hi_sets_are_dropped():
    p = mcx.GenParams(n=3, t_min=5, t_max=12, p_hi=1.0, u_target=0.8, max_attempts=20)
    report = mcx.generate(p)
    assert report.accepted == []
    assert report.attempts == 20
    assert report.dropped["single-criticality"] == 20


def test_write_report(tmp_path, params):
    report = mcx.generate(params)
    paths = mcx.write_report(report, str(tmp_path))
    assert sorted(paths) == sorted(list_taskset_files(str(tmp_path)))
    assert [mcx.load_taskset(p) for p in paths] == report.accepted
    manifest = json.loads((tmp_path / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["accepted"] == params.count
    assert manifest["params"]["seed"] == params.seed
    assert [s["attempt"] for s in manifest["sets"]] == report.attempts_of
    assert set(manifest["dropped"]) == {
        "u-lo",
        "u-hi",
        "duplicate",
        "single-criticality",
        "u-avg",
        "infeasible",
    }
