import numpy as np
import pytest

from fluidris.channel import CorrelationModel, PhaseConfig
from fluidris.mixture import MixtureModel, coefficients
from fluidris.montecarlo import (
    McConfig,
    draw_g0,
    sample_g0,
    validate_distribution,
    validate_metrics,
    wilson_interval,
)
from fluidris.selection import ActiveSet


def _uncorrelated(n):
    active = ActiveSet(indices=tuple(range(1, n + 1)), stride_used=1, tau_used=1.0, max_corr=0.0)
    return CorrelationModel(active_set=active, matrix=np.eye(n))


def test_zero_coupling_gives_zero_gain():
    corr = _uncorrelated(4)
    phase = PhaseConfig(phases=np.zeros(4), seed=0)
    zeroed = CorrelationModel(active_set=corr.active_set, matrix=np.zeros((4, 4)))
    draws = sample_g0(zeroed, phase, McConfig(trials=100, seed=1))
    assert np.all(draws == 0.0)


def test_single_element_product_of_exponentials():
    corr = _uncorrelated(1)
    phase = PhaseConfig.sample(1, seed=3)
    draws = sample_g0(corr, phase, McConfig(trials=200_000, seed=2))
    # G0 = |z_u|^2 |z_f|^2 with unit-mean exponential factors
    assert draws.mean() == pytest.approx(1.0, abs=0.02)
    assert np.all(draws >= 0.0)


def test_sample_mean_matches_trace(built, scenarios):
    bs = built["fris25"]
    draws = sample_g0(bs.corr, bs.phase, McConfig(trials=200_000, seed=11))
    tr = bs.spectral.trace_c
    stderr = draws.std(ddof=1) / np.sqrt(draws.size)
    assert abs(draws.mean() - tr) <= 4.0 * stderr


def test_reproducible_and_batch_invariant(built):
    bs = built["ris25"]
    a = sample_g0(bs.corr, bs.phase, McConfig(trials=30_000, seed=77, batch=30_000))
    b = sample_g0(bs.corr, bs.phase, McConfig(trials=30_000, seed=77, batch=1024))
    c = sample_g0(bs.corr, bs.phase, McConfig(trials=30_000, seed=77, batch=7))
    assert np.array_equal(a, b)
    assert np.array_equal(b, c)


def test_trial_normal_stream_is_position_independent(built):
    # trial t's variates depend only on (seed, t), not on how batches are cut
    from fluidris.montecarlo import _trial_normals

    block = _trial_normals(5, 0, 64, 25)
    for trial in (0, 1, 13, 63):
        assert np.array_equal(_trial_normals(5, trial, 1, 25)[0], block[trial])


def test_single_draw_matches_stream(built):
    # reductions differ by a few ulp between the vectorized and single paths
    bs = built["ris25"]
    batch = sample_g0(bs.corr, bs.phase, McConfig(trials=64, seed=5))
    for trial in (0, 1, 13, 63):
        assert draw_g0(bs.corr, bs.phase, (5, trial)) == pytest.approx(batch[trial], rel=1e-10)


def test_wilson_interval_properties():
    lo, hi = wilson_interval(50, 1000)
    assert lo < 0.05 < hi
    lo0, hi0 = wilson_interval(0, 1000)
    assert lo0 == 0.0 and hi0 > 0.0
    lo1, hi1 = wilson_interval(1000, 1000)
    assert hi1 == 1.0 and lo1 < 1.0


def test_distribution_validation_small_scale(built, scenarios):
    bs = built["fris25"]
    rep = validate_distribution(bs.corr, bs.phase, bs.mixture, McConfig(trials=100_000, seed=9))
    assert rep.ks_distance < 0.01
    assert rep.mean_analytic == pytest.approx(bs.spectral.trace_c, rel=1e-8)
    assert abs(rep.mean_delta) < 0.5
    assert rep.trials == 100_000


def test_distribution_negative_control(built):
    # doubling every scale must be detected decisively
    bs = built["fris25"]
    wrong = MixtureModel(
        lambdas=bs.mixture.lambdas * 2.0,
        orders=bs.mixture.orders,
        weights=bs.mixture.weights,
        regime=bs.mixture.regime,
        condition_estimate=bs.mixture.condition_estimate,
    )
    rep = validate_distribution(bs.corr, bs.phase, wrong, McConfig(trials=100_000, seed=9))
    assert rep.ks_distance > 0.05


def test_metrics_validation_rows(built, scenarios):
    bs = built["ris36"]
    sc = scenarios["ris36"]
    rep = validate_metrics(
        bs.corr, bs.phase, bs.mixture, sc.budget, [30.0, 40.0, 50.0], McConfig(trials=50_000, seed=4)
    )
    assert len(rep.rows) == 3
    for row in rep.rows:
        assert 0.0 <= row.wilson_lo <= row.wilson_hi <= 1.0
        assert row.ec_ci_lo <= row.ec_mc <= row.ec_ci_hi
        if row.op_exact > 1e-2:
            assert row.wilson_lo <= row.op_exact <= row.wilson_hi
    assert "rows" in rep.to_json()


def test_mc_config_validation():
    with pytest.raises(Exception):
        McConfig(trials=0)
    with pytest.raises(Exception):
        McConfig(trials=10, batch=0)
