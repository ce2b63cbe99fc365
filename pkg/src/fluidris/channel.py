"""Correlated-channel assembly: the active-set correlation matrix, the fixed
phase configuration, the composite coupling matrix A = R^(1/2) Phi R^(1/2),
C = A A^H, and the grouping of C's spectrum into (lambda_i, m_i) clusters.
"""

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from fluidris.errors import ConditioningError, DomainError
from fluidris.geometry import UpaGeometry, delinearize
from fluidris.linalg import eig_hermitian, psd_sqrt, require_hermitian
from fluidris.selection import ActiveSet
from fluidris.specfun import bessel_j0

__all__ = [
    "CorrelationModel",
    "PhaseConfig",
    "SpectralModel",
    "build_correlation",
    "build_coupling",
    "spectral_group",
]


@dataclass(frozen=True)
class CorrelationModel:
    """Clarke-Jakes correlation matrix restricted to the active set."""

    active_set: ActiveSet
    matrix: np.ndarray

    def __post_init__(self):
        m = self.matrix
        if m.shape != (len(self.active_set), len(self.active_set)):
            raise DomainError("correlation matrix does not match the active set size")


@dataclass(frozen=True)
class PhaseConfig:
    """Per-element reflection phases, sampled once and then kept fixed."""

    phases: np.ndarray
    seed: int

    @classmethod
    def sample(cls, n: int, seed: int) -> "PhaseConfig":
        rng = np.random.default_rng(seed)
        phases = rng.uniform(0.0, 2.0 * np.pi, size=n)
        phases.flags.writeable = False
        return cls(phases=phases, seed=seed)

    def matrix(self) -> np.ndarray:
        """The diagonal reflection matrix diag(exp(i theta))."""
        return np.diag(np.exp(1j * self.phases))


@dataclass(frozen=True)
class SpectralModel:
    """Strictly positive eigenvalues of C grouped into multiplicity clusters.

    groups is a tuple of (lambda, multiplicity) pairs in descending lambda;
    dropped_mass is the total eigenvalue mass discarded below rank_tol.
    """

    groups: tuple
    rank: int
    trace_c: float
    cluster_tol: float
    rank_tol: float
    dropped_mass: float

    def __post_init__(self):
        if sum(m for _, m in self.groups) != self.rank:
            raise DomainError("group multiplicities must sum to the rank")

    def to_json(self) -> str:
        doc = {
            "groups": [[lam, m] for lam, m in self.groups],
            "rank": self.rank,
            "trace_c": self.trace_c,
            "cluster_tol": self.cluster_tol,
            "rank_tol": self.rank_tol,
            "dropped_mass": self.dropped_mass,
        }
        return json.dumps(doc, sort_keys=True)


def build_correlation(geom: UpaGeometry, active_set: ActiveSet) -> CorrelationModel:
    """Pairwise J0(2 pi * distance / lambda_c) over the active elements.

    The argument reduces to the dimensionless 2 pi d_w sqrt(p^2 + q^2), which
    is evaluated from exact integer grid offsets.
    """
    cells = [delinearize(geom, m) for m in active_set.indices]
    n = len(cells)
    r = np.ones((n, n))
    for a in range(n):
        ia, ja = cells[a]
        for b in range(a + 1, n):
            ib, jb = cells[b]
            arg = 2.0 * np.pi * geom.d_w * math.sqrt((ib - ia) ** 2 + (jb - ja) ** 2)
            r[a, b] = r[b, a] = bessel_j0(arg)
    r.flags.writeable = False
    return CorrelationModel(active_set=active_set, matrix=r)


def build_coupling(corr: CorrelationModel, phase: PhaseConfig):
    """Composite coupling matrix A = R^(1/2) Phi R^(1/2) and C = A A^H."""
    n = corr.matrix.shape[0]
    if phase.phases.shape[0] != n:
        raise DomainError(f"phase vector length {phase.phases.shape[0]} != active set size {n}")
    half = psd_sqrt(corr.matrix)
    a = half @ phase.matrix() @ half
    c = a @ a.conj().T
    c = 0.5 * (c + c.conj().T)
    return a, c


def spectral_group(c, cluster_tol: float = 1e-6, rank_tol: float = 1e-10) -> SpectralModel:
    """Group the strictly positive spectrum of C into (lambda, multiplicity) clusters.

    Eigenvalues below rank_tol * lambda_max are dropped; neighbours closer than
    cluster_tol in relative terms are merged, with the group lambda set to the
    cluster mean.  Aborts if the grouped mass drifts from trace(C) by more
    than 1e-8 relative.
    """
    c = require_hermitian(c)
    trace = float(np.trace(c).real)
    w = eig_hermitian(c).eigenvalues
    if w[0] <= 0.0:
        raise ConditioningError("degenerate channel: C has no strictly positive eigenvalues")
    keep = w[w > rank_tol * w[0]]
    dropped = float(np.sum(w[(w <= rank_tol * w[0]) & (w > 0.0)]))
    groups = []
    acc, count = keep[0], 1
    for lam in keep[1:]:
        mean = acc / count
        if (mean - lam) <= cluster_tol * mean:
            acc += lam
            count += 1
        else:
            groups.append((acc / count, count))
            acc, count = lam, 1
    groups.append((acc / count, count))
    grouped_mass = sum(lam * m for lam, m in groups)
    drift = abs(grouped_mass + dropped - trace) / trace
    if drift > 1e-8:
        raise ConditioningError(
            f"spectral grouping lost {drift:.2e} of trace(C); tighten cluster_tol/rank_tol"
        )
    if dropped > 1e-8 * trace:
        warnings.warn(
            f"dropped eigenvalue mass {dropped:.3e} exceeds 1e-8 of trace(C) = {trace:.6g}",
            RuntimeWarning,
            stacklevel=2,
        )
    return SpectralModel(
        groups=tuple(groups),
        rank=int(sum(m for _, m in groups)),
        trace_c=trace,
        cluster_tol=cluster_tol,
        rank_tol=rank_tol,
        dropped_mass=dropped,
    )
