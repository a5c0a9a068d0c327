"""Benchmark harness: CSV rows, summaries and level sets."""

import pytest

from ab_hybrid_planner.benchmark import (
    format_csv,
    generated_levels,
    level_directory,
    parse_csv,
    plot_scores,
    read_csv,
    run_benchmark,
    summarize,
    write_csv,
)
from ab_hybrid_planner.errors import BenchmarkError
from ab_hybrid_planner.levels.level_io import save_level
from ab_hybrid_planner.models.results import BenchmarkRow, Stage
from ab_hybrid_planner.models.settings import BenchmarkSettings

ROWS = [
    BenchmarkRow(level_id="a", solved=True, score=25000, shots=1,
                 stage_tags=[Stage.SINGLE_SHOT], plan_ms=[12.34]),
    BenchmarkRow(level_id="b", solved=False, score=0, shots=2,
                 stage_tags=[Stage.NO_BLOCKS, Stage.DEFAULT], plan_ms=[800.0, 0.25]),
]


class TestCsv:
    def test_format(self):
        assert format_csv(ROWS[:1]) == (
            "level_id,solved,score,shots,stage_tags,plan_ms\n"
            "a,true,25000,1,single-shot,12.3\n"
        )

    def test_parse(self, tmp_path):
        rows = read_csv(write_csv(ROWS, tmp_path / "results.csv"))
        assert [r.level_id for r in rows] == ["a", "b"]
        assert rows[0].solved and not rows[1].solved
        assert rows[1].stage_tags == [Stage.NO_BLOCKS, Stage.DEFAULT]
        assert rows[1].plan_ms == [800.0, 0.2]

    def test_bad_header(self):
        with pytest.raises(BenchmarkError, match="header"):
            parse_csv("id,score\nx,1\n")

    def test_summary_survives_the_round_trip(self):
        assert summarize(parse_csv(format_csv(ROWS))) == summarize(ROWS)


def test_summary():
    summary = summarize(ROWS)
    assert summary.levels == 2
    assert summary.solved == 1
    assert summary.mean_score == 12500.0
    assert summary.stage_histogram == {
        "full": 0, "single-shot": 1, "single-shot-no-blocks": 1, "default-action": 1,
    }


def test_empty_level_set():
    with pytest.raises(BenchmarkError):
        run_benchmark([])


def test_run_benchmark(exposed_level, platform_enclosed_level, fast_config, timeouts):
    # A tiny per-level budget sends every shot to the default release.
    rows, summary = run_benchmark(
        [("b-exposed", exposed_level), ("a-enclosed", platform_enclosed_level)],
        fast_config, timeouts, settings=BenchmarkSettings(level_budget=1e-6),
    )
    assert [r.level_id for r in rows] == ["a-enclosed", "b-exposed"]
    assert [r.solved for r in rows] == [False, True]
    assert rows[1].score == 25000
    assert summary.stage_histogram["default-action"] == 2


def test_level_directory(tmp_path, exposed_level, level_builder):
    save_level(exposed_level, tmp_path / "two.json")
    save_level(level_builder(), tmp_path / "one.json")
    assert [level_id for level_id, _ in level_directory(tmp_path)] == ["one", "two"]
    with pytest.raises(BenchmarkError):
        level_directory(tmp_path / "one.json")


def test_generated_levels():
    levels = generated_levels(3, seed=7)
    assert [level_id for level_id, _ in levels] == ["gen-0007", "gen-0008", "gen-0009"]
    assert generated_levels(3, seed=7) == levels


def test_plot(tmp_path):
    pytest.importorskip("matplotlib")
    assert plot_scores(ROWS, tmp_path / "scores.png").exists()
