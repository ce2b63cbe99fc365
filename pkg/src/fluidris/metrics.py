"""Link budget, exact and asymptotic outage probability, diversity diagnostics,
and ergodic capacity for the K-mixture gain model.

All logarithms inside the asymptotic coefficients are natural; capacity is
converted to bits at the end.  Ergodic capacity has two independent routes: an
adaptive quadrature over the mixture density (primary) and a Mellin-Barnes
contour evaluation of the equivalent Meijer-G form (cross-check); both must
agree, which the test suite enforces at 1e-6 relative.
"""

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate, optimize
from scipy import special as sp

from fluidris.errors import ConditioningError, DomainError
from fluidris.mixture import MixtureModel, cdf_g0, mixture_mean, pdf_g0

__all__ = [
    "LinkBudget",
    "OutageResult",
    "diversity_slope",
    "ergodic_capacity",
    "gain_threshold",
    "meijer_g_14_42",
    "outage_asymptotic",
    "outage_exact",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class LinkBudget:
    """Transmit/noise powers, per-hop pathloss parameters and the target rate."""

    p_tx_w: float = 1.0
    n0_w: float = 1.0
    rho_f: float = 10.0
    rho_u: float = 10.0
    d_f_m: float = 20.0
    d_u_m: float = 40.0
    alpha_f: float = 2.1
    alpha_u: float = 2.1
    r0_bps_hz: float = 0.1

    def __post_init__(self):
        for name in ("p_tx_w", "n0_w", "rho_f", "rho_u", "d_f_m", "d_u_m", "alpha_f", "alpha_u", "r0_bps_hz"):
            if not (getattr(self, name) > 0.0):
                raise DomainError(f"link budget field {name} must be strictly positive")

    @property
    def gamma_bar(self) -> float:
        """Normalized average SNR P/N0."""
        return self.p_tx_w / self.n0_w

    @property
    def l_f(self) -> float:
        return self.rho_f * self.d_f_m ** (-self.alpha_f)

    @property
    def l_u(self) -> float:
        return self.rho_u * self.d_u_m ** (-self.alpha_u)

    @property
    def effective_gain(self) -> float:
        """gamma_bar * L_f * L_u, the factor multiplying the channel gain."""
        return self.gamma_bar * self.l_f * self.l_u

    def at_snr_db(self, snr_db: float) -> "LinkBudget":
        """Copy of the budget with gamma_bar set to the given dB value."""
        return replace(self, p_tx_w=self.n0_w * 10.0 ** (snr_db / 10.0))


@dataclass(frozen=True)
class OutageResult:
    """Exact and asymptotic outage at one SNR together with the S coefficients."""

    exact: float
    asymptotic: float
    s1: float
    s2: float
    s3: float
    regime: str


def gain_threshold(budget: LinkBudget) -> float:
    """Outage gain threshold (2^R0 - 1) / (gamma_bar L_f L_u)."""
    return (2.0 ** budget.r0_bps_hz - 1.0) / budget.effective_gain


def outage_exact(model: MixtureModel, budget: LinkBudget) -> float:
    """Exact outage probability F_G0(threshold)."""
    return float(cdf_g0(model, gain_threshold(budget)))


def _s_terms(model: MixtureModel):
    k1 = model.orders == 1
    s1 = math.fsum((model.weights[k1] / model.lambdas[k1]).tolist())
    s2 = math.fsum((model.weights[k1] * np.log(model.lambdas[k1]) / model.lambdas[k1]).tolist())
    hi = model.orders >= 2
    s3 = math.fsum((model.weights[hi] / ((model.orders[hi] - 1) * model.lambdas[hi])).tolist())
    return s1, s2, s3


def outage_asymptotic(model: MixtureModel, budget: LinkBudget) -> OutageResult:
    """High-SNR outage expansion for the model's regime.

    general/simple: threshold * (S1 ln(1/threshold) + S2 [+ S3]);
    equal:          threshold / ((m1 - 1) lambda1), m1 >= 2;
    uncorrelated:   threshold / (M_on - 1),         M_on >= 2.
    """
    rt = gain_threshold(budget)
    s1, s2, s3 = _s_terms(model)
    if model.regime in ("equal", "uncorrelated"):
        m1 = int(model.orders[0])
        if m1 < 2:
            raise DomainError(f"{model.regime} asymptote requires multiplicity >= 2, got {m1}")
        lam1 = float(model.lambdas[0])
        asym = rt / ((m1 - 1) * lam1)
    else:
        asym = rt * (s1 * math.log(1.0 / rt) + s2 + s3)
    return OutageResult(
        exact=outage_exact(model, budget),
        asymptotic=asym,
        s1=s1,
        s2=s2,
        s3=s3,
        regime=model.regime,
    )


def diversity_slope(model: MixtureModel, budget: LinkBudget, gamma_grid) -> float:
    """Least-squares slope of -log P_out versus log gamma_bar over the grid.

    Diagnostic only: the limit is exactly one, but log corrections bias finite
    grids slightly low in the general/simple regimes.
    """
    grid = np.asarray(gamma_grid, dtype=float)
    if grid.size < 3:
        raise DomainError("diversity fit needs at least 3 grid points")
    rts = (2.0 ** budget.r0_bps_hz - 1.0) / (grid * budget.l_f * budget.l_u)
    pout = cdf_g0(model, rts)
    if np.any(pout <= 0.0):
        raise ConditioningError("outage underflowed on the diversity grid; shrink the grid")
    slope = -np.polyfit(np.log(grid), np.log(pout), 1)[0]
    return float(slope)


def _mb_folded(k: int, x: float, fold: float, rtol: float = 1e-9) -> float:
    """Contour integral Gamma(s)^2 Gamma(1-s) Gamma(s+k) x^s / (2 pi i), times e^(-fold).

    Vertical line Re(s) = 1/2 (between the nonpositive-integer poles of
    Gamma(s)^2 Gamma(s+k) and the positive-integer poles of Gamma(1-s)),
    trapezoidal in t with step halving until the change is below rtol.
    """
    if x <= 0.0:
        raise DomainError("Meijer-G argument must be positive")

    def log_integrand(t):
        s = 0.5 + 1j * t
        return 2.0 * sp.loggamma(s) + sp.loggamma(1.0 - s) + sp.loggamma(s + k) + s * math.log(x) - fold

    peak = float(np.real(log_integrand(np.array([0.0]))[0]))
    tmax = 8.0
    while float(np.real(log_integrand(np.array([tmax]))[0])) > peak - 42.0:  # e^-42 ~ 5e-19
        tmax *= 1.5
        if tmax > 1e4:
            raise ConditioningError("Mellin-Barnes integrand fails to decay")

    def value(h):
        t = np.arange(-tmax, tmax + 0.5 * h, h)
        vals = np.exp(log_integrand(t))
        integral = np.trapezoid(vals, dx=h) * 1j  # ds = i dt
        return float((integral / (2j * np.pi)).real)

    h = 0.2
    prev = value(h)
    for _ in range(8):
        h *= 0.5
        cur = value(h)
        if abs(cur - prev) <= rtol * max(abs(cur), 1e-300):
            return cur
        prev = cur
    raise ConditioningError(f"Mellin-Barnes refinement stalled (last change {abs(cur - prev):.2e})")


def meijer_g_14_42(k: int, x: float) -> float:
    """The specific Meijer-G value G^{1,4}_{4,2}(x | 1-k,0,1,1; 1,0) for integer k >= 1."""
    if k < 1 or k != int(k):
        raise DomainError("shape parameter must be a positive integer")
    return _mb_folded(int(k), x, fold=0.0)


def _ec_quadrature(model: MixtureModel, rho: float) -> float:
    mean = mixture_mean(model)
    lo, hi = 1e-12 * mean, mean
    while cdf_g0(model, hi) < 0.5:
        hi *= 4.0
    while cdf_g0(model, lo) > 0.5:
        lo *= 0.25
    med = optimize.brentq(lambda x: cdf_g0(model, x) - 0.5, lo, hi, xtol=1e-12 * mean)

    def f(g):
        return math.log1p(rho * g) / _LN2 * pdf_g0(model, g)

    with warnings.catch_warnings():
        # roundoff-limited extrapolation is fine as long as the achieved error
        # estimate stays an order below the 1e-6 dual-route agreement target
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        head, e1, *_ = integrate.quad(f, 0.0, med, limit=200, full_output=1)
        tail, e2, *_ = integrate.quad(f, med, np.inf, limit=200, full_output=1)
    total = head + tail
    if e1 + e2 > max(1e-7 * abs(total), 1e-9):
        raise ConditioningError(
            f"capacity quadrature did not converge (error estimate {e1 + e2:.2e} on {total:.6g})"
        )
    return total


def _ec_mellin_barnes(model: MixtureModel, rho: float) -> float:
    total = 0.0
    for lam, k, c in sorted(model.terms, key=lambda t: -abs(t[2])):
        total += c * _mb_folded(int(k), rho * lam, fold=float(sp.gammaln(k)))
    return total / _LN2


def ergodic_capacity(model: MixtureModel, budget: LinkBudget, method: str = "quadrature") -> float:
    """Ergodic capacity E[log2(1 + gamma)] in bits/s/Hz.

    method is "quadrature" (adaptive integral of log2(1+rho g) against the
    mixture density, split at the distribution median) or "mellin_barnes"
    (contour evaluation of the per-component Meijer-G representation).
    """
    rho = budget.effective_gain
    if rho == 0.0:
        return 0.0
    if method == "quadrature":
        return _ec_quadrature(model, rho)
    if method == "mellin_barnes":
        return _ec_mellin_barnes(model, rho)
    raise DomainError(f"unknown ergodic-capacity method {method!r}")
