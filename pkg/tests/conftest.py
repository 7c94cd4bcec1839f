"""Shared fixtures: canned configs and a medium-length default run."""

from dataclasses import replace

import pytest

from armcorr import DEFAULT_CONFIG, analyze_log, run_simulation
from armcorr.config import BabblePolicy, RunConfig

# Both arms folded away from the rail and from each other; nothing can touch.
PARKED_ANGLES = ((0.9, 1.1, 1.2), (0.9, 1.1, 1.2))


def parked_config(**world_overrides) -> RunConfig:
    world = replace(DEFAULT_CONFIG.world, initial_angles=PARKED_ANGLES, **world_overrides)
    return RunConfig(world=world, babble=DEFAULT_CONFIG.babble, analysis=DEFAULT_CONFIG.analysis)


def frozen_babble() -> BabblePolicy:
    return replace(DEFAULT_CONFIG.babble, activity_bias=(0.0, 0.0))


@pytest.fixture(scope="session")
def medium_run():
    """20k-step default babbling run with derived channels and panels."""
    log = run_simulation(DEFAULT_CONFIG, 0, 20000)
    derived, panels = analyze_log(log)
    return log, derived, panels
