"""Shared fixtures: the four reference scenarios and their simulations.

Building a scenario costs a couple of seconds; the million-trial sample
arrays used by the acceptance suite cost ~10 s each.  Everything heavy is
session-scoped and lazy.
"""

import numpy as np
import pytest

from fluidris.cli import _resolve_config
from fluidris.montecarlo import sample_g0
from fluidris.scenario import build_scenario, load_scenario

SCENARIO_NAMES = ("fris25", "ris25", "fris36", "ris36")


@pytest.fixture(scope="session")
def scenarios():
    """name -> Scenario for the bundled reference configs."""
    return {name: load_scenario(_resolve_config(name)) for name in SCENARIO_NAMES}


@pytest.fixture(scope="session")
def built(scenarios):
    """name -> BuiltScenario (selection through mixture)."""
    return {name: build_scenario(sc) for name, sc in scenarios.items()}


@pytest.fixture(scope="session")
def samples(scenarios, built):
    """name -> sorted million-trial gain samples under the configured seeds."""
    out = {}
    for name in SCENARIO_NAMES:
        sc = scenarios[name]
        bs = built[name]
        draws = sample_g0(bs.corr, bs.phase, sc.mc)
        draws.sort()
        out[name] = draws
    return out
