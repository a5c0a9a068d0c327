"""Tests for the three-stage simplification cascade and plan files."""

import pytest

from ab_hybrid_planner.agents.oracle import oracle_hit
from ab_hybrid_planner.errors import PlanFormatError
from ab_hybrid_planner.levels.generator import GeneratorParams, generate_level
from ab_hybrid_planner.models.results import Plan, PlanStep, Stage
from ab_hybrid_planner.models.settings import CascadeTimeouts, SearchConfig
from ab_hybrid_planner.planning.cascade import SKIPPED, build_problem, cascade
from ab_hybrid_planner.planning.plan_io import format_plan, load_plan, parse_plan, save_plan


class TestCascade:
    def test_exposed_pig_is_planned_in_stage_one(self, exposed_level, fast_config, timeouts):
        result = cascade(exposed_level, fast_config, timeouts)
        assert result.stage is Stage.SINGLE_SHOT
        assert [a.stage for a in result.attempts] == [Stage.SINGLE_SHOT]
        assert result.attempts[0].status == "solved"
        assert result.decision.steps[0].tick in oracle_hit(exposed_level, 0, fast_config)
        assert result.plan_ms >= 0.0

    def test_stone_enclosure_needs_the_relaxation(self, stone_enclosed_level, fast_config, timeouts):
        result = cascade(stone_enclosed_level, fast_config, timeouts)
        assert result.stage is Stage.NO_BLOCKS
        assert [a.stage for a in result.attempts] == [Stage.SINGLE_SHOT, Stage.NO_BLOCKS]
        assert result.attempts[0].status == "frontier-exhausted"
        assert len(result.decision.steps) == 1

    def test_platform_enclosure_falls_back_to_default(self, platform_enclosed_level, fast_config, timeouts):
        result = cascade(platform_enclosed_level, fast_config, timeouts)
        assert result.stage is Stage.DEFAULT
        assert [(a.stage, a.status) for a in result.attempts] == [
            (Stage.SINGLE_SHOT, "frontier-exhausted"),
            (Stage.NO_BLOCKS, SKIPPED),
            (Stage.DEFAULT, "solved"),
        ]
        assert result.decision.steps == (PlanStep(tick=90, action="pa-twang_b0"),)

    def test_spent_budget_goes_straight_to_default(self, stone_enclosed_level, fast_config, timeouts):
        result = cascade(stone_enclosed_level, fast_config, timeouts, budget=0.0)
        assert result.stage is Stage.DEFAULT
        assert [a.status for a in result.attempts] == ["timeout", "timeout", "solved"]

    def test_no_pigs_gives_an_empty_plan(self, level_builder, fast_config, timeouts):
        result = cascade(level_builder(birds=2), fast_config, timeouts)
        assert result.decision.steps == ()
        assert result.stage is Stage.SINGLE_SHOT
        assert [(a.stage, a.status) for a in result.attempts] == [(Stage.SINGLE_SHOT, "solved")]

    def test_stage_timeouts_hold_on_a_dense_level(self):
        level = generate_level(4, GeneratorParams(n_pigs=8, n_blocks=24, n_birds=5, n_platforms=3,
                                                  structure_prob=1.0, tnt_prob=0.2))
        limits = CascadeTimeouts(single_shot=0.5, no_blocks=0.5)
        result = cascade(level, SearchConfig(), limits)
        searched = [a for a in result.attempts if a.stage is not Stage.DEFAULT]
        assert searched
        for attempt in searched:
            assert attempt.elapsed <= 1.1 * 0.5

    def test_build_problem_per_stage(self, stone_enclosed_level, fast_config):
        full = build_problem(stone_enclosed_level, Stage.FULL, fast_config)
        shot = build_problem(stone_enclosed_level, Stage.SINGLE_SHOT, fast_config)
        relaxed = build_problem(stone_enclosed_level, Stage.NO_BLOCKS, fast_config)
        assert not full.single_shot
        assert shot.single_shot and not shot.blocks_stripped
        assert relaxed.single_shot and relaxed.blocks_stripped
        assert len(relaxed.schema) < len(shot.schema) == len(full.schema)


class TestPlanFiles:
    PLAN = Plan(
        steps=(PlanStep(tick=12, action="pa-twang_b0"), PlanStep(tick=140, action="pa-twang_b1")),
        stage=Stage.FULL,
        dt=0.05,
    )

    def test_format(self):
        assert format_plan(self.PLAN) == (
            "stage=full dt=0.05\n"
            "tick=12 action=pa-twang_b0\n"
            "tick=140 action=pa-twang_b1\n"
        )

    def test_parse_round_trip(self, tmp_path):
        path = save_plan(self.PLAN, tmp_path / "shot.txt")
        assert load_plan(path).same_decisions(self.PLAN)

    def test_comments_and_blank_lines(self):
        plan = parse_plan("# planned offline\n\nstage=default-action dt=0.05\ntick=90 action=pa-twang_b0\n")
        assert plan.stage is Stage.DEFAULT
        assert plan.decisions() == {90: "pa-twang_b0"}

    @pytest.mark.parametrize("text", [
        "",
        "tick=1 action=a\n",
        "stage=bogus dt=0.05\n",
        "stage=full dt=0.05\ntick=x action=a\n",
        "stage=full dt=0.05\ntick=5 action=a\ntick=5 action=b\n",
        "stage=full dt=0.05\ntick=5\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(PlanFormatError):
            parse_plan(text)
