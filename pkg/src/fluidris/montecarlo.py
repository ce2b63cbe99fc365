"""Counter-based Monte Carlo simulator for the cascaded gain and the
validation reports comparing empirical statistics against the analytic model.

Randomness is a Philox stream keyed by the seed; trial t owns counter block
[t * m_on, (t+1) * m_on), and normal variates come from the inverse CDF of
fixed-consumption uniforms.  Trials are therefore order-independent and
accumulation is invariant to batch size.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from numpy.random import Philox
from scipy.special import ndtri

from fluidris.channel import CorrelationModel, PhaseConfig, build_coupling
from fluidris.errors import DomainError
from fluidris.metrics import LinkBudget, ergodic_capacity, gain_threshold, outage_exact
from fluidris.mixture import MixtureModel, cdf_g0, mixture_mean

__all__ = [
    "DistributionReport",
    "McConfig",
    "MetricsReport",
    "draw_g0",
    "sample_g0",
    "validate_distribution",
    "validate_metrics",
    "wilson_interval",
]

_SQRT_HALF = math.sqrt(0.5)


@dataclass(frozen=True)
class McConfig:
    """Trial count, stream seed, and accumulation batch size."""

    trials: int = 1_000_000
    seed: int = 20250811
    batch: int = 250_000

    def __post_init__(self):
        if self.trials < 1 or self.batch < 1:
            raise DomainError("trials and batch must be >= 1")


def _trial_normals(seed: int, first_trial: int, count: int, m: int) -> np.ndarray:
    """(count, 4m) standard-normal components for trials starting at first_trial."""
    bits = Philox(key=seed, counter=first_trial * m)
    raw = bits.random_raw(4 * m * count)
    u = (raw >> np.uint64(11)).astype(np.float64) * 2.0 ** -53 + 2.0 ** -54
    return ndtri(u).reshape(count, 4 * m)


def _gains_batch(a: np.ndarray, seed: int, first_trial: int, count: int) -> np.ndarray:
    m = a.shape[0]
    z = _trial_normals(seed, first_trial, count, m) * _SQRT_HALF
    g_f = z[:, 0:m] + 1j * z[:, m : 2 * m]
    g_u = z[:, 2 * m : 3 * m] + 1j * z[:, 3 * m : 4 * m]
    inner = g_u.conj() @ a  # (count, m)
    amp = np.einsum("ti,ti->t", inner, g_f)
    return np.abs(amp) ** 2


def sample_g0(corr: CorrelationModel, phase: PhaseConfig, mc: McConfig) -> np.ndarray:
    """Simulate mc.trials end-to-end gain realizations."""
    a, _ = build_coupling(corr, phase)
    out = np.empty(mc.trials)
    for start in range(0, mc.trials, mc.batch):
        stop = min(start + mc.batch, mc.trials)
        out[start:stop] = _gains_batch(a, mc.seed, start, stop - start)
    return out


def draw_g0(corr: CorrelationModel, phase: PhaseConfig, rng_state) -> float:
    """One gain realisation; rng_state is (seed, trial_index)."""
    seed, trial = rng_state
    a, _ = build_coupling(corr, phase)
    return float(_gains_batch(a, seed, trial, 1)[0])


def wilson_interval(failures: int, trials: int, z: float = 1.959963984540054):
    """Wilson score interval for a binomial proportion."""
    if trials < 1 or not (0 <= failures <= trials):
        raise DomainError("invalid trial/failure counts")
    denom = trials + z * z
    center = (failures + 0.5 * z * z) / denom
    half = z * math.sqrt(failures * (trials - failures) / trials + 0.25 * z * z) / denom
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class DistributionReport:
    """Empirical-versus-analytic comparison of the gain distribution."""

    trials: int
    seed: int
    ks_distance: float
    mean_mc: float
    mean_analytic: float
    var_mc: float
    var_analytic: float
    cdf_grid: np.ndarray
    cdf_delta: np.ndarray

    @property
    def mean_delta(self) -> float:
        return self.mean_mc - self.mean_analytic

    @property
    def var_delta(self) -> float:
        return self.var_mc - self.var_analytic

    def to_json(self) -> str:
        return json.dumps(
            {
                "trials": self.trials,
                "seed": self.seed,
                "ks_distance": self.ks_distance,
                "mean_mc": self.mean_mc,
                "mean_analytic": self.mean_analytic,
                "var_mc": self.var_mc,
                "var_analytic": self.var_analytic,
                "max_abs_cdf_delta": float(np.max(np.abs(self.cdf_delta))),
            },
            sort_keys=True,
        )


def _mixture_variance(model: MixtureModel) -> float:
    # E[G^2] of a K(k, lam) component is 2 k (k+1) lam^2
    second = math.fsum(
        c * 2.0 * k * (k + 1) * lam * lam
        for lam, k, c in zip(model.lambdas, model.orders, model.weights)
    )
    return second - mixture_mean(model) ** 2


def validate_distribution(
    corr: CorrelationModel,
    phase: PhaseConfig,
    model: MixtureModel,
    mc: McConfig,
    samples: np.ndarray = None,
    grid_points: int = 201,
) -> DistributionReport:
    """KS distance and moment deltas between simulation and the mixture.

    A pre-drawn sample array (from :func:`sample_g0` with the same config) can
    be passed to avoid re-simulation.
    """
    if samples is None:
        samples = sample_g0(corr, phase, mc)
    s = np.sort(samples)
    n = s.shape[0]
    f = cdf_g0(model, s)
    hi = np.arange(1, n + 1) / n
    lo = np.arange(0, n) / n
    ks = float(max(np.max(np.abs(f - hi)), np.max(np.abs(f - lo))))
    grid = s[np.linspace(0, n - 1, grid_points).astype(int)]
    emp = np.searchsorted(s, grid, side="right") / n
    delta = cdf_g0(model, grid) - emp
    return DistributionReport(
        trials=n,
        seed=mc.seed,
        ks_distance=ks,
        mean_mc=float(s.mean()),
        mean_analytic=mixture_mean(model),
        var_mc=float(s.var(ddof=1)),
        var_analytic=_mixture_variance(model),
        cdf_grid=grid,
        cdf_delta=delta,
    )


@dataclass(frozen=True)
class MetricsRow:
    snr_db: float
    op_exact: float
    op_mc: float
    wilson_lo: float
    wilson_hi: float
    ec_exact: float
    ec_mc: float
    ec_ci_lo: float
    ec_ci_hi: float


@dataclass(frozen=True)
class MetricsReport:
    """Per-SNR outage and capacity comparison against simulation."""

    trials: int
    seed: int
    rows: tuple

    def to_json(self) -> str:
        return json.dumps(
            {
                "trials": self.trials,
                "seed": self.seed,
                "rows": [vars(r) for r in self.rows],
            },
            sort_keys=True,
        )


def validate_metrics(
    corr: CorrelationModel,
    phase: PhaseConfig,
    model: MixtureModel,
    budget: LinkBudget,
    snr_grid_db,
    mc: McConfig,
    samples: np.ndarray = None,
) -> MetricsReport:
    """Outage (Wilson 95%) and capacity (normal 99% CI) versus simulation per SNR."""
    if samples is None:
        samples = sample_g0(corr, phase, mc)
    n = samples.shape[0]
    rows = []
    for snr_db in np.asarray(snr_grid_db, dtype=float):
        b = budget.at_snr_db(float(snr_db))
        rt = gain_threshold(b)
        failures = int(np.count_nonzero(samples < rt))
        w_lo, w_hi = wilson_interval(failures, n)
        rho = b.effective_gain
        cvals = np.log1p(rho * samples) / math.log(2.0)
        ec_mc = float(cvals.mean())
        half = 2.5758293035489004 * float(cvals.std(ddof=1)) / math.sqrt(n)
        rows.append(
            MetricsRow(
                snr_db=float(snr_db),
                op_exact=outage_exact(model, b),
                op_mc=failures / n,
                wilson_lo=w_lo,
                wilson_hi=w_hi,
                ec_exact=ergodic_capacity(model, b),
                ec_mc=ec_mc,
                ec_ci_lo=ec_mc - half,
                ec_ci_hi=ec_mc + half,
            )
        )
    return MetricsReport(trials=n, seed=mc.seed, rows=tuple(rows))
