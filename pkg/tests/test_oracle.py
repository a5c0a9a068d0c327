"""The ballistic oracle against the translated model."""

import math

import pytest

from ab_hybrid_planner.agents.oracle import flight_path, oracle_hit, oracle_report
from ab_hybrid_planner.domain.translate import translate
from ab_hybrid_planner.errors import PreconditionError
from ab_hybrid_planner.hybrid.model import WAIT, tick
from ab_hybrid_planner.models.level import Block, Material, Pig
from ab_hybrid_planner.models.settings import SearchConfig

RELEASE_TICK = 90


def model_positions(level, release_tick, horizon):
    problem = translate(level, horizon=horizon)
    state = problem.initial
    positions = {0: (state["x_bird_b0"], state["y_bird_b0"])}
    for k in range(horizon):
        state = tick(state, problem, "pa-twang_b0" if k == release_tick else WAIT)
        positions[state.tick] = (state["x_bird_b0"], state["y_bird_b0"])
    return positions


@pytest.mark.parametrize("release_tick", [20, 60, RELEASE_TICK])
def test_path_matches_the_model_exactly(level_builder, release_tick):
    # pig far off the path so the flight runs to the ground and beyond
    level = level_builder(pigs=[Pig(x=10.0, y=150.0)])
    path = flight_path(level, release_tick, SearchConfig(horizon=400))
    positions = model_positions(level, release_tick, 400)
    assert len(path) > 10
    for k, x, y in path:
        assert positions[k] == (x, y)


def test_hitting_release_ticks(exposed_level, fast_config):
    hits = oracle_hit(exposed_level, 0, fast_config)
    assert RELEASE_TICK in hits
    assert 1 not in hits
    assert oracle_hit(exposed_level, None, fast_config) == hits


def test_unreachable_pig(platform_enclosed_level, fast_config):
    report = oracle_report(platform_enclosed_level, 0, fast_config)
    assert not report.hittable
    assert 0 < report.closest_miss < math.inf


def test_no_pigs(level_builder, fast_config):
    report = oracle_report(level_builder(), None, fast_config)
    assert report.hits == set()
    assert report.closest_miss == math.inf


def test_preconditions(exposed_level, level_builder, fast_config):
    with pytest.raises(PreconditionError):
        oracle_hit(exposed_level, 3, fast_config)
    blocked = level_builder(
        pigs=[Pig(x=50.0, y=0.5)],
        blocks=[Block(x=40.0, y=1.0, width=2.0, height=2.0, material=Material.ICE)],
    )
    with pytest.raises(PreconditionError):
        oracle_hit(blocked, 0, fast_config)
