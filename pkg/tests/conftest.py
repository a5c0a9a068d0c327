"""
Shared fixtures: level builders and the reference levels used across the suite.

The reference levels put a pig on the flight path of a 45 degree release
(tick 90 at the default 10 deg/s aiming rate and dt = 0.05), computed from
the ballistic oracle rather than hard-coded, so they stay correct if the
physics defaults move.
"""

from typing import Sequence

import pytest

from ab_hybrid_planner.agents.oracle import flight_path
from ab_hybrid_planner.config import reset_config
from ab_hybrid_planner.models.level import Bird, Block, Level, Material, Physics, Pig, Platform, Point
from ab_hybrid_planner.models.settings import CascadeTimeouts, SearchConfig

# Narrow scene and a lower aiming limit keep the searches in the suite short.
FAST_PHYSICS = Physics(max_angle=60.0, x_bound=200.0)
SLINGSHOT = Point(x=0.0, y=5.0)
RELEASE_TICK = 90
TICKS_AFTER_RELEASE = 40


def make_level(pigs: Sequence[Pig] = (), blocks: Sequence[Block] = (),
               platforms: Sequence[Platform] = (), birds: int = 1,
               physics: Physics = FAST_PHYSICS) -> Level:
    return Level(
        slingshot=SLINGSHOT,
        birds=tuple(Bird(id=i) for i in range(birds)),
        pigs=tuple(pigs),
        blocks=tuple(blocks),
        platforms=tuple(platforms),
        physics=physics,
    )


@pytest.fixture(autouse=True)
def _isolated_config(monkeypatch):
    for var in ("ABPLAN_CONFIG_FILE", "ABPLAN_DT", "ABPLAN_HORIZON", "ABPLAN_STAGE_TIMEOUT",
                "ABPLAN_LEVEL_BUDGET", "ABPLAN_LOG_LEVEL"):
        monkeypatch.delenv(var, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def fast_config() -> SearchConfig:
    return SearchConfig(horizon=400)


@pytest.fixture
def timeouts() -> CascadeTimeouts:
    return CascadeTimeouts(single_shot=60.0, no_blocks=60.0)


@pytest.fixture
def level_builder():
    return make_level


@pytest.fixture(scope="session")
def hit_point():
    """Where the bird is 40 ticks after a 45 degree release in an empty scene."""
    path = flight_path(make_level(), RELEASE_TICK, SearchConfig(horizon=400))
    tick, x, y = path[TICKS_AFTER_RELEASE]
    assert tick == RELEASE_TICK + TICKS_AFTER_RELEASE
    return x, y


@pytest.fixture
def exposed_level(hit_point) -> Level:
    x, y = hit_point
    return make_level(pigs=[Pig(x=x, y=y, radius=2.0)], birds=3)


@pytest.fixture
def stone_enclosed_level(hit_point) -> Level:
    """Pig buried in the middle of a stone block far too stable to breach."""
    x, y = hit_point
    return make_level(
        pigs=[Pig(x=x, y=y, radius=2.0)],
        blocks=[Block(x=x, y=y, width=40.0, height=40.0, material=Material.STONE)],
    )


@pytest.fixture
def platform_enclosed_level(hit_point) -> Level:
    """Pig inside a platform: every approach expires the bird first."""
    x, y = hit_point
    return make_level(
        pigs=[Pig(x=x, y=y, radius=2.0)],
        platforms=[Platform(x=x, y=y, width=40.0, height=40.0)],
    )
