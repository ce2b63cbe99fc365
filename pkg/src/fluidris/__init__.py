"""Exact statistics and performance metrics for fluid/conventional RIS cascades.

The package builds spatially correlated cascaded-channel models on a uniform
planar array, derives the exact K-mixture distribution of the end-to-end gain,
evaluates outage probability and ergodic capacity (exact and asymptotic), and
validates everything against a built-in Monte Carlo simulator.
"""

from fluidris.errors import ConditioningError, ConfigurationError, DomainError
from fluidris.geometry import ElementIndex, UpaGeometry
from fluidris.selection import ActiveSet, SelectionPolicy, select_contiguous, select_fluid
from fluidris.channel import (
    CorrelationModel,
    PhaseConfig,
    SpectralModel,
    build_correlation,
    build_coupling,
    spectral_group,
)
from fluidris.mixture import MixtureModel, cdf_g0, coefficients, mixture_mean, pdf_g0
from fluidris.metrics import (
    LinkBudget,
    OutageResult,
    diversity_slope,
    ergodic_capacity,
    gain_threshold,
    outage_asymptotic,
    outage_exact,
)
from fluidris.montecarlo import McConfig, draw_g0, sample_g0, validate_distribution, validate_metrics

__version__ = "0.1.0"

__all__ = [
    "ActiveSet",
    "ConditioningError",
    "ConfigurationError",
    "CorrelationModel",
    "DomainError",
    "ElementIndex",
    "LinkBudget",
    "McConfig",
    "MixtureModel",
    "OutageResult",
    "PhaseConfig",
    "SelectionPolicy",
    "SpectralModel",
    "UpaGeometry",
    "build_correlation",
    "build_coupling",
    "cdf_g0",
    "coefficients",
    "diversity_slope",
    "draw_g0",
    "ergodic_capacity",
    "gain_threshold",
    "mixture_mean",
    "outage_asymptotic",
    "outage_exact",
    "pdf_g0",
    "sample_g0",
    "select_contiguous",
    "select_fluid",
    "spectral_group",
    "validate_distribution",
    "validate_metrics",
]
