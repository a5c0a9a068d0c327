"""
Tests for the Angry Birds model: block attributes, collision physics and the
grounded event catalogue, each event exercised from a hand-placed scenario.
"""

from pathlib import Path

import numpy as np
import pytest

from ab_hybrid_planner.domain.materials import block_attributes, pig_supports, support_pairs
from ab_hybrid_planner.domain.physics import elastic_bird_velocity, elastic_bird_velocity_expr
from ab_hybrid_planner.domain.translate import (
    BLOCK_EVENT_KINDS,
    bird_of_action,
    single_shot,
    strip_blocks,
    translate,
    twang_name,
)
from ab_hybrid_planner.errors import DegenerateGeometryError, InapplicableActionError, ModelError
from ab_hybrid_planner.hybrid.expr import DEG_TO_RAD, approx_cos, approx_sin, evaluate, num
from ab_hybrid_planner.hybrid.model import (
    TickRecord,
    apply_action,
    check_order_independence,
    fire_events,
    step,
    tick,
)
from ab_hybrid_planner.hybrid.trace import format_tick
from ab_hybrid_planner.models.level import Block, Material, Pig, Platform
from ab_hybrid_planner.models.settings import MaterialTable


def in_flight(problem, **values):
    """Initial state with bird 0 already launched, overridden by ``values``."""
    base = {"bird_released_b0": True, "angle_adjusted": True,
            "birds_remaining": problem.initial["birds_remaining"] - 1}
    base.update(values)
    return problem.initial.with_values(base)


@pytest.fixture
def tower_level(level_builder):
    """Two stacked wood blocks with a pig on top, and a platform off to the side."""
    return level_builder(
        pigs=[Pig(x=50.0, y=5.0, radius=1.0)],
        blocks=[
            Block(x=50.0, y=1.0, width=4.0, height=2.0, material=Material.WOOD),
            Block(x=50.0, y=3.0, width=4.0, height=2.0, material=Material.WOOD),
        ],
        platforms=[Platform(x=100.0, y=50.0, width=10.0, height=2.0)],
    )


class TestBlockAttributes:
    def test_materials_are_ordered(self):
        table = MaterialTable()
        attrs = [block_attributes(2.0, 1.0, m, 0.0, table) for m in (Material.ICE, Material.WOOD, Material.STONE)]
        assert attrs[0].life < attrs[1].life < attrs[2].life
        assert attrs[0].stability < attrs[1].stability < attrs[2].stability
        assert attrs[0].mass < attrs[1].mass < attrs[2].mass

    def test_higher_blocks_are_less_stable(self):
        table = MaterialTable()
        low = block_attributes(2.0, 1.0, Material.WOOD, 0.0, table)
        high = block_attributes(2.0, 1.0, Material.WOOD, 6.0, table)
        assert high.stability < low.stability
        assert high.life == low.life

    def test_degenerate_block(self):
        with pytest.raises(ModelError):
            block_attributes(0.0, 1.0, Material.ICE, 0.0, MaterialTable())

    def test_support_relations(self, tower_level):
        assert support_pairs(tower_level, 0.1) == [(0, 1)]
        assert pig_supports(tower_level, 0.1) == [(1, 0)]


class TestElasticCollision:
    def test_hand_evaluated_example(self):
        v = elastic_bird_velocity((10.0, 0.0), (0.0, 0.0), (1.0, 1.0), (0.0, 0.0), 1.0, 1.0)
        assert tuple(v) == pytest.approx((5.0, -5.0))

    def test_coincident_centres(self):
        with pytest.raises(DegenerateGeometryError):
            elastic_bird_velocity((1.0, 0.0), (0.0, 0.0), (2.0, 2.0), (2.0, 2.0), 1.0, 1.0)

    def test_random_instances(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            vb = rng.uniform(-50.0, 50.0, 2)
            xb = rng.uniform(-5.0, 5.0, 2)
            xp = xb + rng.uniform(0.1, 3.0, 2) * rng.choice([-1.0, 1.0], 2)
            mb, mp = rng.uniform(0.1, 5.0, 2)
            zero = np.zeros(2)

            # massless pig: nothing changes
            assert np.array_equal(elastic_bird_velocity(vb, zero, xb, xp, mb, 0.0), vb)

            # equal masses head-on: the component along the centre line is handed over
            d = xb - xp
            head_on = rng.uniform(-3.0, 3.0) * d
            after = elastic_bird_velocity(head_on, zero, xb, xp, 1.0, 1.0)
            assert abs(after.dot(d) / np.linalg.norm(d)) < 1e-12

            # the bird never gains kinetic energy from a resting pig
            after = elastic_bird_velocity(vb, zero, xb, xp, mb, mp)
            assert after.dot(after) <= vb.dot(vb) * (1.0 + 1e-12)

    def test_expression_form_agrees(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            vx, vy, xb, yb, xp, yp = rng.uniform(-10.0, 10.0, 6)
            mb, mp = rng.uniform(0.5, 3.0, 2)
            names = ("vx", "vy", "xb", "yb", "xp", "yp", "mb", "mp")
            state = dict(zip(names, map(float, (vx, vy, xb, yb, xp, yp, mb, mp))))
            ex, ey = elastic_bird_velocity_expr(*(num(n) for n in names))
            expected = elastic_bird_velocity((vx, vy), (0.0, 0.0), (xb, yb), (xp, yp), mb, mp)
            assert [evaluate(ex, state), evaluate(ey, state)] == pytest.approx(list(expected), rel=1e-9, abs=1e-9)


class TestTranslate:
    def test_counts(self, level_builder):
        level = level_builder(pigs=[Pig(x=80.0, y=1.0)], birds=2)
        problem = translate(level)
        assert len(problem.schema) == 9 + 2 * 12 + 5
        assert [a.name for a in problem.actions] == ["pa-twang_b0", "pa-twang_b1"]
        assert len(problem.processes) == 4
        assert len(problem.events) == 10

    def test_counts_with_structures(self, tower_level):
        problem = translate(tower_level)
        kinds = [e.kind for e in problem.events]
        assert kinds.count("bird_block_stable_side") == 2
        assert kinds.count("collapse") == 1
        assert kinds.count("pig_atop_collapse") == 1
        assert kinds.count("collision_platform") == 1
        assert len(problem.events) == 16
        assert problem.initial["reflected_at_b0_k1"] == -1.0

    def test_initial_state(self, level_builder):
        level = level_builder(pigs=[Pig(x=80.0, y=1.0)], birds=3)
        state = translate(level).initial
        assert (state["x_bird_b0"], state["y_bird_b0"]) == (level.slingshot.x, level.slingshot.y)
        assert state["v_bird_b2"] == level.physics.launch_speed
        assert state["birds_remaining"] == 3.0
        assert state["active_bird"] == 0.0
        assert state["pig_alive_p0"] is True

    def test_action_names(self):
        assert twang_name(3) == "pa-twang_b3"
        assert bird_of_action("pa-twang_b3") == 3
        with pytest.raises(ModelError):
            bird_of_action("wait")


class TestLaunch:
    def test_release_at_thirty_degrees(self, level_builder):
        problem = translate(level_builder())
        state = apply_action(problem.initial.with_values({"angle": 30.0}), problem.action("pa-twang_b0"))
        assert state["vy_bird_b0"] == 35.0
        assert state["vx_bird_b0"] == pytest.approx(60.40, abs=0.01)
        assert state["bird_released_b0"] is True
        assert state["angle_adjusted"] is True
        assert state["birds_remaining"] == 0.0

    def test_release_twice(self, level_builder):
        problem = translate(level_builder())
        state = apply_action(problem.initial, problem.action("pa-twang_b0"))
        with pytest.raises(InapplicableActionError):
            apply_action(state.with_values({"angle_adjusted": False}), problem.action("pa-twang_b0"))
        with pytest.raises(InapplicableActionError):
            apply_action(problem.initial.with_values({"angle_adjusted": True}), problem.action("pa-twang_b0"))

    def test_aiming(self, level_builder):
        problem = translate(level_builder())
        state = tick(problem.initial, problem)
        assert state["angle"] == 0.5

    def test_release_then_first_flight_step(self, level_builder):
        problem = translate(level_builder())
        state = problem.initial.with_values({"angle": 45.0})
        after = tick(state, problem, "pa-twang_b0")
        vx = 70.0 * approx_cos(45.0 * DEG_TO_RAD)
        vy = 70.0 * approx_sin(45.0)
        assert after["x_bird_b0"] == 0.0 + vx * 0.05
        assert after["y_bird_b0"] == 5.0 + vy * 0.05
        assert after["vy_bird_b0"] == vy + (-9.8) * 0.05
        assert after["angle"] == 45.0


class TestEvents:
    def test_ground_bounce(self, level_builder):
        problem = translate(level_builder())
        state, fired = fire_events(in_flight(problem, x_bird_b0=10.0, y_bird_b0=-0.3, vy_bird_b0=-8.0),
                                   problem.events)
        assert fired == ["collision_ground_b0"]
        assert state["y_bird_b0"] == 1.0
        assert state["vy_bird_b0"] == pytest.approx(3.2)
        assert state["bounce_count_b0"] == 1.0

    def test_bird_kills_pig(self, level_builder):
        problem = translate(level_builder(pigs=[Pig(x=20.0, y=20.0, radius=1.0)]))
        state, fired = fire_events(
            in_flight(problem, x_bird_b0=19.0, y_bird_b0=19.0, vx_bird_b0=10.0, vy_bird_b0=0.0),
            problem.events,
        )
        assert fired == ["collision_pig_b0_p0"]
        assert state["pig_alive_p0"] is False
        assert state["pigs_killed"] == 1.0
        assert (state["vx_bird_b0"], state["vy_bird_b0"]) == pytest.approx((5.0, -5.0))

    def test_stable_block_reflects(self, tower_level):
        problem = translate(tower_level)
        state, fired = fire_events(in_flight(problem, x_bird_b0=47.7, y_bird_b0=1.0, vx_bird_b0=10.0),
                                   problem.events)
        assert fired == ["bird_block_stable_side_b0_k0"]
        assert state["vx_bird_b0"] == pytest.approx(-6.0)
        assert state["bounce_count_b0"] == 1.0
        assert state["reflected_at_b0_k0"] == 0.0

    def test_stacked_blocks_reflect_once_each(self, tower_level):
        # centre on the seam of the stack: the bird overlaps the top of k0 and the bottom of k1
        problem = translate(tower_level)
        start = in_flight(problem, x_bird_b0=49.5, y_bird_b0=2.0, vx_bird_b0=10.0, vy_bird_b0=-5.0)
        state, fired = fire_events(start, problem.events)
        assert fired == ["bird_block_stable_top_b0_k0", "bird_block_stable_top_b0_k1"]
        assert state["vy_bird_b0"] == pytest.approx(-1.8)
        assert state["bounce_count_b0"] == 2.0
        assert state["reflected_at_b0_k0"] == state["reflected_at_b0_k1"] == 0.0

    def test_stacked_blocks_settle_within_a_tick(self, tower_level):
        problem = translate(tower_level)
        start = in_flight(problem, x_bird_b0=49.5, y_bird_b0=2.0, vx_bird_b0=10.0, vy_bird_b0=-5.0)
        record = step(start, problem)
        # both pairs reflect again after the flow step, and the fourth bounce expires the bird
        assert record.fired == (
            "bird_block_stable_top_b0_k0", "bird_block_stable_top_b0_k1",
            "bird_block_stable_top_b0_k0", "bird_block_stable_top_b0_k1", "three_bounce_b0",
        )
        assert record.state["bounce_count_b0"] == 4.0
        assert record.state["bird_expired_b0"] is True

    def test_unstable_block_is_damaged(self, level_builder):
        problem = translate(level_builder(
            blocks=[Block(x=50.0, y=1.0, width=1.0, height=2.0, material=Material.ICE)]))
        state, fired = fire_events(in_flight(problem, x_bird_b0=49.2, y_bird_b0=1.0, vx_bird_b0=30.0),
                                   problem.events)
        assert fired == ["bird_block_unstable_b0_k0"]
        assert state["life_block_k0"] == pytest.approx(70.0)
        assert state["stability_block_k0"] == 0.0
        assert state["vx_bird_b0"] == pytest.approx(15.0)
        assert state["contact_b0"] == 0.0
        assert state["bounce_count_b0"] == 0.0

    def test_unstable_block_is_destroyed(self, level_builder):
        problem = translate(level_builder(
            blocks=[Block(x=50.0, y=1.0, width=1.0, height=2.0, material=Material.ICE)]))
        state, fired = fire_events(in_flight(problem, x_bird_b0=49.2, y_bird_b0=1.0, vx_bird_b0=120.0),
                                   problem.events)
        assert fired == ["bird_block_unstable_b0_k0", "block_destroyed_k0"]
        assert state["block_dead_k0"] is True

    def test_collapse_kills_pig_on_top(self, tower_level):
        problem = translate(tower_level)
        state, fired = fire_events(problem.initial.with_values({"block_dead_k0": True}), problem.events)
        assert fired == ["collapse_k0_k1", "pig_atop_collapse_k1_p0"]
        assert state["y_block_k1"] == 1.0
        assert state["life_block_k1"] == pytest.approx(1200.0 - 20.0 * 2.0)
        assert state["pig_alive_p0"] is False

    def test_tnt(self, level_builder):
        problem = translate(level_builder(
            pigs=[Pig(x=51.5, y=1.0, radius=0.5)],
            blocks=[
                Block(x=50.0, y=1.0, width=2.0, height=2.0, material=Material.WOOD, explosive=True),
                Block(x=51.0, y=2.2, width=1.0, height=0.4, material=Material.ICE),
            ],
        ))
        state, fired = fire_events(in_flight(problem, x_bird_b0=48.8, y_bird_b0=1.0, vx_bird_b0=10.0),
                                   problem.events)
        assert fired == ["tnt_contact_b0_k0", "tnt_destroy_pig_k0_p0", "tnt_destroy_block_k0_k1"]
        assert state["block_dead_k0"] is True
        assert state["block_dead_k1"] is True
        assert state["pig_alive_p0"] is False
        assert state["vx_bird_b0"] == pytest.approx(5.0)

    def test_platform_expires_bird(self, tower_level):
        problem = translate(tower_level)
        state, fired = fire_events(in_flight(problem, x_bird_b0=100.0, y_bird_b0=48.8, vx_bird_b0=10.0),
                                   problem.events)
        assert fired == ["collision_platform_b0_q0"]
        assert state["bird_expired_b0"] is True
        assert (state["vx_bird_b0"], state["vy_bird_b0"]) == (0.0, 0.0)

    def test_out_of_scene(self, level_builder):
        problem = translate(level_builder())
        _, fired = fire_events(in_flight(problem, x_bird_b0=250.0, y_bird_b0=10.0), problem.events)
        assert fired == ["out_of_scene_b0"]

    def test_three_bounces(self, level_builder):
        problem = translate(level_builder())
        state, fired = fire_events(in_flight(problem, x_bird_b0=10.0, y_bird_b0=10.0, bounce_count_b0=3.0),
                                   problem.events)
        assert fired == ["three_bounce_b0"]
        assert state["bird_expired_b0"] is True

    def test_next_bird_is_loaded(self, level_builder):
        problem = translate(level_builder(birds=2))
        state, fired = fire_events(
            in_flight(problem, x_bird_b0=10.0, y_bird_b0=10.0, bird_expired_b0=True, angle=37.5),
            problem.events,
        )
        assert fired == ["load_next_bird_b0"]
        assert state["active_bird"] == 1.0
        assert state["angle"] == 0.0
        assert state["angle_adjusted"] is False
        assert evaluate(problem.action("pa-twang_b1").precondition, state) is True

    def test_pig_collisions_are_order_independent(self, level_builder):
        problem = translate(level_builder(pigs=[Pig(x=60.0, y=30.0, radius=1.5)]))
        rng = np.random.default_rng(7)
        for _ in range(100):
            angle = rng.uniform(0.0, 2.0 * np.pi)
            reach = rng.uniform(0.5, 1.9)
            state = in_flight(
                problem,
                x_bird_b0=60.0 + reach * float(np.cos(angle)),
                y_bird_b0=30.0 + reach * float(np.sin(angle)),
                vx_bird_b0=float(rng.uniform(5.0, 60.0)),
                vy_bird_b0=float(rng.uniform(-40.0, 40.0)),
            )
            report = check_order_independence(problem, state, permutations=3, seed=int(rng.integers(1000)))
            assert not report.ambiguous

    def test_structures_are_order_independent(self, level_builder):
        problem = translate(level_builder(
            pigs=[Pig(x=50.0, y=5.0, radius=1.0), Pig(x=80.0, y=5.0, radius=1.0), Pig(x=120.0, y=1.0)],
            blocks=[
                Block(x=50.0, y=1.0, width=4.0, height=2.0, material=Material.WOOD),
                Block(x=50.0, y=3.0, width=4.0, height=2.0, material=Material.WOOD),
                Block(x=80.0, y=1.0, width=4.0, height=2.0, material=Material.STONE),
                Block(x=80.0, y=3.0, width=4.0, height=2.0, material=Material.ICE),
            ],
        ))
        rng = np.random.default_rng(11)
        for _ in range(50):
            # bird on the seam of one tower while the other tower loses its base
            state = in_flight(
                problem,
                x_bird_b0=float(rng.uniform(48.5, 51.5)),
                y_bird_b0=2.0,
                vx_bird_b0=float(rng.uniform(2.0, 15.0)),
                vy_bird_b0=float(rng.uniform(-8.0, -1.0)),
                block_dead_k2=True,
            )
            report = check_order_independence(problem, state, permutations=5, seed=int(rng.integers(1000)))
            assert not report.ambiguous
            assert report.reference["pig_alive_p1"] is False
            assert report.reference["bounce_count_b0"] == 2.0


class TestSimplifications:
    def test_single_shot(self, exposed_level):
        problem = single_shot(translate(exposed_level))
        assert [a.name for a in problem.actions] == ["pa-twang_b0"]
        assert problem.single_shot
        assert str(problem.goal) == "(>= pigs_killed 1.0)"
        again = single_shot(problem)
        assert again.actions == problem.actions and again.goal == problem.goal

    def test_strip_blocks(self, tower_level):
        problem = translate(tower_level)
        stripped = strip_blocks(problem)
        assert stripped.blocks_stripped
        assert not any(d.owner.startswith("block:") for d in stripped.schema)
        assert not stripped.event_kinds & BLOCK_EVENT_KINDS
        assert "collision_platform" in stripped.event_kinds
        assert stripped.initial["x_pig_p0"] == problem.initial["x_pig_p0"]

    def test_strip_blocks_without_blocks(self, exposed_level):
        problem = translate(exposed_level)
        assert strip_blocks(problem) is problem


class TestEventCatalogue:
    """One hand-placed moment per event kind, checked against a golden firing log."""

    GOLDEN = Path(__file__).parent / "golden" / "event_catalogue.txt"

    @pytest.fixture
    def scenarios(self, level_builder, tower_level):
        tnt = level_builder(
            pigs=[Pig(x=51.5, y=1.0, radius=0.5)],
            blocks=[
                Block(x=50.0, y=1.0, width=2.0, height=2.0, material=Material.WOOD, explosive=True),
                Block(x=51.0, y=2.2, width=1.0, height=0.4, material=Material.ICE),
            ],
        )
        thin_ice = level_builder(blocks=[Block(x=50.0, y=1.0, width=1.0, height=2.0, material=Material.ICE)])
        return [
            ("pig", level_builder(pigs=[Pig(x=20.0, y=20.0, radius=1.0)]),
             dict(x_bird_b0=19.0, y_bird_b0=19.0, vx_bird_b0=10.0)),
            ("tnt", tnt, dict(x_bird_b0=48.8, y_bird_b0=1.0, vx_bird_b0=10.0)),
            ("side", tower_level, dict(x_bird_b0=47.7, y_bird_b0=1.0, vx_bird_b0=10.0)),
            ("stack", tower_level, dict(x_bird_b0=49.5, y_bird_b0=2.0, vx_bird_b0=10.0, vy_bird_b0=-5.0)),
            ("breach", thin_ice, dict(x_bird_b0=49.2, y_bird_b0=1.0, vx_bird_b0=120.0)),
            ("collapse", tower_level, dict(block_dead_k0=True)),
            ("platform", tower_level, dict(x_bird_b0=100.0, y_bird_b0=48.8, vx_bird_b0=10.0)),
            ("ground", level_builder(), dict(x_bird_b0=10.0, y_bird_b0=-0.3, vy_bird_b0=-8.0)),
            ("scene", level_builder(), dict(x_bird_b0=250.0, y_bird_b0=10.0)),
            ("bounces", level_builder(), dict(x_bird_b0=10.0, y_bird_b0=10.0, bounce_count_b0=3.0)),
            ("loading", level_builder(birds=2), dict(x_bird_b0=10.0, y_bird_b0=10.0, bird_expired_b0=True)),
        ]

    def test_firing_log_matches_golden(self, scenarios):
        lines = []
        for label, level, values in scenarios:
            problem = translate(level)
            start = in_flight(problem, **values)
            after, fired = fire_events(start, problem.events)
            record = TickRecord(start, after, "wait", tuple(fired))
            lines.append(f"{label}: {format_tick(record)[0]}")
        assert "\n".join(lines) + "\n" == self.GOLDEN.read_text()

    def test_every_event_kind_is_covered(self, scenarios):
        declared, fired_kinds = set(), set()
        for _, level, values in scenarios:
            problem = translate(level)
            kind_of = {e.name: e.kind for e in problem.events}
            declared |= set(kind_of.values())
            _, fired = fire_events(in_flight(problem, **values), problem.events)
            fired_kinds |= {kind_of[name] for name in fired}
        assert fired_kinds == declared
        assert len(declared) == 15
