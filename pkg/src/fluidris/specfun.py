"""Scalar special functions: J0, scaled modified Bessel K of integer order,
log-gamma, and the small-argument K expansions used by the asymptotic outage
formulas.

All K values are carried in exponentially scaled form (``value * exp(log_scale)``)
because the distribution tails require K_k(2*sqrt(g/lambda)) at arguments where
the plain value under- or overflows a double.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from fluidris.errors import DomainError

__all__ = ["ScaledBessel", "bessel_j0", "bessel_k", "bessel_k_small", "ln_gamma"]


@dataclass(frozen=True)
class ScaledBessel:
    """A positive quantity represented as value * exp(log_scale)."""

    value: float
    log_scale: float

    def unscaled(self) -> float:
        """Plain float value; may under/overflow for extreme scales."""
        return self.value * math.exp(self.log_scale)

    def log(self) -> float:
        """Natural log of the represented value."""
        return math.log(self.value) + self.log_scale


def bessel_j0(x):
    """Bessel function of the first kind, order zero.

    Accepts scalars or arrays; even in x by construction.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("bessel_j0 requires finite arguments")
    out = sp.j0(np.abs(arr))
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


# Above this estimated natural-log magnitude the plain scaled kve overflows and
# the ascending series (dominant term factored out) takes over.
_SERIES_LOG_THRESHOLD = 600.0


def _bessel_k_series_scaled(nu: int, x: float) -> ScaledBessel:
    # DLMF 10.31.1 with the leading (1/2)(nu-1)! (2/x)^nu factored into log_scale.
    # Remaining bracket is 1 + O(x^2); log/psi pieces are exponentially small here.
    ls = math.log(0.5) + sp.gammaln(nu) + nu * math.log(2.0 / x)
    w = 0.25 * x * x
    bracket = 0.0
    term = 1.0
    for j in range(nu):
        bracket += term
        term *= -w / ((j + 1) * (nu - 1 - j)) if j < nu - 1 else 0.0
    # log + psi tail relative to the leading factor: magnitude ~ w^nu / Gamma(nu)^2
    lnw = math.log(w)
    sign = -1.0 if nu % 2 else 1.0
    rel = 0.0
    for j in range(40):
        lt = (nu + j) * lnw - sp.gammaln(j + 1) - sp.gammaln(nu + j + 1) - sp.gammaln(nu)
        if lt < -745.0:
            break
        rel += sign * math.exp(lt) * (-lnw + sp.psi(j + 1) + sp.psi(nu + j + 1))
    return ScaledBessel(value=bracket + rel, log_scale=ls)


def bessel_k(nu: int, x: float) -> ScaledBessel:
    """Exponentially scaled modified Bessel function K_nu for integer nu >= 0.

    Returns a :class:`ScaledBessel` so callers can combine log scales; valid to
    better than 1e-10 relative for nu <= 64 and 1e-8 <= x <= 600.
    """
    if nu < 0 or nu != int(nu):
        raise DomainError(f"order must be a nonnegative integer, got {nu}")
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"K_nu requires x > 0, got {x}")
    nu = int(nu)
    if nu >= 1:
        log_est = sp.gammaln(nu) + nu * math.log(2.0 / x) if x < 2.0 else 0.0
        if log_est > _SERIES_LOG_THRESHOLD:
            return _bessel_k_series_scaled(nu, x)
    return ScaledBessel(value=float(sp.kve(nu, x)), log_scale=-x)


def bessel_k_small(nu: int, x: float) -> float:
    """Leading small-argument expansion of K_nu used by the outage asymptotics.

    For nu = 1: 1/z + (z/2) log(z/2).
    For nu >= 2: (1/2)(nu-1)! (2/z)^nu - (1/2)(nu-2)! (z/2)^(2-nu).
    Valid only on 0 < z <= 0.1.
    """
    if nu < 1 or nu != int(nu):
        raise DomainError(f"expansion defined for integer nu >= 1, got {nu}")
    if not (0.0 < x <= 0.1):
        raise DomainError(f"expansion validated only on 0 < x <= 0.1, got {x}")
    nu = int(nu)
    if nu == 1:
        return 1.0 / x + 0.5 * x * math.log(0.5 * x)
    return 0.5 * math.factorial(nu - 1) * (2.0 / x) ** nu - 0.5 * math.factorial(nu - 2) * (0.5 * x) ** (2 - nu)


def ln_gamma(k):
    """log Gamma(k) for k > 0; scalars or arrays."""
    arr = np.asarray(k, dtype=float)
    if np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise DomainError("ln_gamma requires strictly positive finite arguments")
    out = sp.gammaln(arr)
    return float(out) if np.isscalar(k) or arr.ndim == 0 else out
