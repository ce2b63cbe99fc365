"""Exact K-mixture distribution of the cascaded channel gain.

The Laplace transform of the intermediate quadratic form factors as
prod_i (1 + lambda_i s)^(-m_i); its partial-fraction coefficients c_{i,k} are
extracted as Taylor coefficients of the locally analytic factor via truncated
series arithmetic.  The resulting gain distribution is the signed mixture

    F(g) = sum_{i,k} c_{i,k} F_K(k, lambda_i, g)

of K-distribution components.  Per-component CDFs switch to an ascending
series below w = g/lambda = 0.5 so that deep-tail values keep full relative
precision (the naive 1 - bessel form loses everything once F << 1e-10).
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sp

from fluidris.channel import SpectralModel
from fluidris.errors import ConditioningError, DomainError

__all__ = [
    "MixtureModel",
    "cdf_g0",
    "coefficients",
    "kdist_cdf",
    "kdist_pdf",
    "mixture_mean",
    "pdf_g0",
]

_SERIES_W = 0.5          # per-component series/Bessel switch point in w = g/lambda
_UNCORR_LAMBDA_TOL = 1e-9
_ILL_CONDITION = 1e12


@dataclass(frozen=True)
class MixtureModel:
    """Signed K-mixture: parallel arrays of scales, integer shapes and weights."""

    lambdas: np.ndarray
    orders: np.ndarray
    weights: np.ndarray
    regime: str
    condition_estimate: float

    @property
    def terms(self):
        """Iterate (lambda, k, c) triples."""
        return list(zip(self.lambdas.tolist(), self.orders.tolist(), self.weights.tolist()))

    def to_json(self) -> str:
        import json

        return json.dumps(
            {
                "terms": [[lam, int(k), c] for lam, k, c in self.terms],
                "regime": self.regime,
                "condition_estimate": self.condition_estimate,
            },
            sort_keys=True,
        )


def _taylor_factor(r: float, m: int, order: int) -> np.ndarray:
    """Series of (r*u + 1 - r)^(-m) about u = 0, truncated after ``order`` terms."""
    b = 1.0 - r
    out = np.empty(order)
    out[0] = b ** (-m)
    cur = out[0]
    for t in range(1, order):
        cur *= -(m + t - 1) / t * (r / b)
        out[t] = cur
    return out


def _general_terms(groups):
    """Taylor-extraction path valid for arbitrary multiplicities."""
    out_l, out_k, out_c = [], [], []
    for i, (li, mi) in enumerate(groups):
        series = np.zeros(mi)
        series[0] = 1.0
        for j, (lj, mj) in enumerate(groups):
            if j == i:
                continue
            series = np.convolve(series, _taylor_factor(lj / li, mj, mi))[:mi]
        for k in range(1, mi + 1):
            out_l.append(li)
            out_k.append(k)
            out_c.append(float(series[mi - k]))
    return out_l, out_k, out_c


def _simple_terms(groups):
    """Closed first-order product for spectra with all unit multiplicities."""
    out_l, out_k, out_c = [], [], []
    for i, (li, _) in enumerate(groups):
        c = 1.0
        for j, (lj, _) in enumerate(groups):
            if j != i:
                c *= li / (li - lj)
        out_l.append(li)
        out_k.append(1)
        out_c.append(c)
    return out_l, out_k, out_c


def coefficients(spectral: SpectralModel) -> MixtureModel:
    """Partial-fraction weights c_{i,k} for the grouped spectrum.

    Single-group spectra collapse to one unit-weight component; all-simple
    spectra use the closed first-order product; everything else goes through
    truncated power-series multiplication of the analytic factors.
    """
    groups = list(spectral.groups)
    if not groups or any(lam <= 0.0 for lam, _ in groups):
        raise DomainError("spectral model must contain strictly positive eigenvalue groups")
    lams = [lam for lam, _ in groups]
    if len(set(lams)) != len(lams):
        raise DomainError("spectral groups must have pairwise distinct eigenvalues")

    if len(groups) == 1:
        lam, m = groups[0]
        regime = "uncorrelated" if abs(lam - 1.0) <= _UNCORR_LAMBDA_TOL else "equal"
        out_l, out_k, out_c = [lam], [m], [1.0]
    elif all(m == 1 for _, m in groups):
        regime = "simple"
        out_l, out_k, out_c = _simple_terms(groups)
    else:
        regime = "general"
        out_l, out_k, out_c = _general_terms(groups)

    weights = np.array(out_c)
    condition = float(np.max(np.abs(weights)) / abs(math.fsum(out_c)))
    if condition > _ILL_CONDITION:
        warnings.warn(
            f"mixture coefficients are ill-conditioned (max |c| ~ {condition:.2e}); "
            "consider a coarser cluster_tol",
            RuntimeWarning,
            stacklevel=2,
        )
    model = MixtureModel(
        lambdas=np.array(out_l),
        orders=np.array(out_k, dtype=np.int64),
        weights=weights,
        regime=regime,
        condition_estimate=condition,
    )
    return model


def _log_kve(nu: int, z: np.ndarray) -> np.ndarray:
    """log(K_nu(z)) + z, elementwise, safe where plain kve would overflow."""
    out = np.empty_like(z)
    if nu >= 1:
        est = sp.gammaln(nu) + nu * np.log(2.0 / np.minimum(z, 2.0))
        small = est > 600.0
    else:
        small = np.zeros(z.shape, dtype=bool)
    reg = ~small
    if np.any(reg):
        out[reg] = np.log(sp.kve(nu, z[reg]))
    if np.any(small):
        zs = z[small]
        w = 0.25 * zs * zs
        bracket = np.ones_like(zs)
        term = np.ones_like(zs)
        for j in range(nu - 1):
            term *= -w / ((j + 1) * (nu - 1 - j))
            bracket += term
        # the log/psi tail is ~ w^nu / Gamma(nu)^2, far below resolution here
        out[small] = math.log(0.5) + sp.gammaln(nu) + nu * np.log(2.0 / zs) + np.log(bracket) + zs
    return out


def kdist_pdf(k: int, lam: float, g) -> np.ndarray:
    """Density of a K(k, lambda) component, elementwise over g >= 0."""
    k = int(k)
    g = np.atleast_1d(np.asarray(g, dtype=float))
    if np.any(g < 0.0):
        raise DomainError("gain must be nonnegative")
    out = np.empty_like(g)
    w = g / lam
    tiny = w <= 1e-12
    pos = ~tiny
    if np.any(tiny):
        if k == 1:
            with np.errstate(divide="ignore"):
                lnw = np.log(w[tiny])
            out[tiny] = (-lnw - 2.0 * np.euler_gamma) / lam
        else:
            out[tiny] = 1.0 / ((k - 1) * lam)
    if np.any(pos):
        gp = g[pos]
        z = 2.0 * np.sqrt(gp / lam)
        lp = (
            math.log(2.0)
            - sp.gammaln(k)
            - 0.5 * (k + 1) * math.log(lam)
            + 0.5 * (k - 1) * np.log(gp)
            + _log_kve(k - 1, z)
            - z
        )
        out[pos] = np.exp(lp)
    return out


def _kdist_cdf_series(k: int, w: np.ndarray) -> np.ndarray:
    """Ascending series for F_K in w = g/lambda; full relative precision for small w.

    F = sum_{j=1}^{k-1} (-1)^(j+1) a_j w^j
        + (-1)^k [ln(w) S_I(w) - S_psi(w)],       a_j = (k-1-j)! / (j! (k-1)!),

    with S_I and S_psi the normalized w^(k+j) tails carrying the log and
    digamma pieces of the small-argument Bessel expansion.
    """
    tot = np.zeros_like(w)
    wp = np.ones_like(w)
    coef = 1.0
    for j in range(1, k):
        coef /= j * (k - j)
        wp = wp * w
        tot += ((-1) ** (j + 1)) * coef * wp
    lnw = np.log(w)
    t = np.exp(k * lnw - sp.gammaln(k + 1) - sp.gammaln(k))
    s_i = np.zeros_like(w)
    s_psi = np.zeros_like(w)
    for j in range(0, 120):
        s_i += t
        s_psi += t * (sp.psi(j + 1) + sp.psi(k + j + 1))
        t = t * w / ((j + 1) * (k + j + 1))
        if np.all(t * (np.abs(lnw) + 10.0) < 1e-18 * (np.abs(tot) + s_i + 1e-300)):
            break
    sign = -1.0 if k % 2 else 1.0
    return tot + sign * (lnw * s_i - s_psi)


def kdist_cdf(k: int, lam: float, g) -> np.ndarray:
    """CDF of a K(k, lambda) component, elementwise over g >= 0."""
    k = int(k)
    g = np.atleast_1d(np.asarray(g, dtype=float))
    if np.any(g < 0.0):
        raise DomainError("gain must be nonnegative")
    out = np.zeros_like(g)
    w = g / lam
    ser = (w > 0.0) & (w <= _SERIES_W)
    big = w > _SERIES_W
    if np.any(ser):
        out[ser] = _kdist_cdf_series(k, w[ser])
    if np.any(big):
        wb = w[big]
        z = 2.0 * np.sqrt(wb)
        lb = math.log(2.0) - sp.gammaln(k) + 0.5 * k * np.log(wb) + _log_kve(k, z) - z
        out[big] = 1.0 - np.exp(lb)
    return out


def _compensated_mix(model: MixtureModel, evaluate) -> tuple:
    """Kahan-compensated weighted sum over components, largest |c| first.

    ``evaluate(k, lam)`` returns the per-component values; also returns the
    accumulated absolute scale for clamping decisions.
    """
    order = np.argsort(-np.abs(model.weights))
    tot = None
    comp = None
    scale = None
    for idx in order:
        lam = float(model.lambdas[idx])
        k = int(model.orders[idx])
        c = float(model.weights[idx])
        vals = evaluate(k, lam)
        if tot is None:
            tot = np.zeros_like(vals)
            comp = np.zeros_like(vals)
            scale = np.zeros_like(vals)
        y = c * vals - comp
        t = tot + y
        comp = (t - tot) - y
        tot = t
        scale += np.abs(c * vals)
    return tot, scale


def pdf_g0(model: MixtureModel, g):
    """Mixture density of the cascaded gain; scalar in, scalar out."""
    scalar = np.isscalar(g) or np.ndim(g) == 0
    garr = np.atleast_1d(np.asarray(g, dtype=float))
    if np.any(garr < 0.0):
        raise DomainError("gain must be nonnegative")
    zero = garr == 0.0
    safe = np.where(zero, 1.0, garr)  # origin handled by its analytic limit below
    tot, scale = _compensated_mix(model, lambda k, lam: kdist_pdf(k, lam, safe))
    if np.any(zero):
        tot[zero] = _pdf_at_zero(model)
    bad = tot < -1e-12 * scale
    if np.any(bad):
        raise ConditioningError(
            f"mixture pdf went negative beyond tolerance (min {tot.min():.3e}); "
            "coefficients too ill-conditioned"
        )
    tot = np.maximum(tot, 0.0)
    return float(tot[0]) if scalar else tot


def _pdf_at_zero(model: MixtureModel) -> float:
    k1 = model.orders == 1
    s1 = math.fsum((model.weights[k1] / model.lambdas[k1]).tolist())
    s1_scale = math.fsum(np.abs(model.weights[k1] / model.lambdas[k1]).tolist())
    if abs(s1) > 1e-10 * max(s1_scale, 1e-300):
        return math.inf if s1 > 0 else -math.inf
    s2 = math.fsum((model.weights[k1] * np.log(model.lambdas[k1]) / model.lambdas[k1]).tolist())
    rest = model.orders >= 2
    s3 = math.fsum(
        (model.weights[rest] / ((model.orders[rest] - 1) * model.lambdas[rest])).tolist()
    )
    return s2 + s3


def cdf_g0(model: MixtureModel, g):
    """Mixture CDF of the cascaded gain; monotone, 0 at g = 0, -> 1 at infinity."""
    scalar = np.isscalar(g) or np.ndim(g) == 0
    garr = np.atleast_1d(np.asarray(g, dtype=float))
    if np.any(garr < 0.0):
        raise DomainError("gain must be nonnegative")
    tot, scale = _compensated_mix(model, lambda k, lam: kdist_cdf(k, lam, garr))
    low = tot < -1e-12 * scale
    high = tot > 1.0 + 1e-12 * scale
    if np.any(low) or np.any(high):
        raise ConditioningError("mixture cdf escaped [0, 1] beyond tolerance")
    tot = np.clip(tot, 0.0, 1.0)
    return float(tot[0]) if scalar else tot


def mixture_mean(model: MixtureModel) -> float:
    """First moment sum c * k * lambda; equals trace(C) for a valid mixture."""
    return math.fsum(
        c * k * lam for lam, k, c in zip(model.lambdas, model.orders, model.weights)
    )
