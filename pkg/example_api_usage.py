#!/usr/bin/env python3
"""
Example script demonstrating programmatic usage of the Angry Birds hybrid planner.
"""

import json

from ab_hybrid_planner import agent_loop, cascade, execute, generate_level, load_level
from ab_hybrid_planner.benchmark import format_csv, generated_levels, run_benchmark
from ab_hybrid_planner.models.settings import BenchmarkSettings, SearchConfig


def main():
    """Demonstrate different ways to use the programmatic API."""
    config = SearchConfig(horizon=600)

    # Method 1: plan one shot and replay it
    print("=== Method 1: Plan and Replay ===")
    level = load_level("example_levels/exposed_pig.json")
    shot = cascade(level, config)
    print(f"Stage: {shot.stage.value}")
    for attempt in shot.attempts:
        print(f"   {attempt.stage.value}: {attempt.status} ({attempt.elapsed:.2f}s)")
    run = execute(level, [shot.decision], config)
    print(f"Terminal: {run.trace.terminal.value}, score {run.score.total}")

    print("\n" + "=" * 50 + "\n")

    # Method 2: play a level to the end
    print("=== Method 2: Closed-Loop Agent ===")
    result = agent_loop(load_level("example_levels/wood_tower.json"), config, budget=60.0)
    print(f"Solved: {result.solved} in {result.shots} shot(s)")
    print(f"Stages: {[t.value for t in result.stage_tags]}")
    with open("agent_result.json", "w") as f:
        json.dump(result.model_dump(mode="json"), f, indent=2)
    print("Result saved to agent_result.json")

    print("\n" + "=" * 50 + "\n")

    # Method 3: a small benchmark on generated levels
    print("=== Method 3: Benchmark ===")
    print(f"Seed 3 level has {len(generate_level(3).pigs)} pig(s)")
    rows, summary = run_benchmark(generated_levels(5, seed=0), config,
                                  settings=BenchmarkSettings(level_budget=20.0))
    print(format_csv(rows))
    print(f"Solved {summary.solved}/{summary.levels}, histogram {summary.stage_histogram}")


if __name__ == "__main__":
    main()
