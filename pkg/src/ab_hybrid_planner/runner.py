"""
Command-line interface: plan, simulate, agent, bench and gen subcommands.

Exit codes: 0 success, 1 unsolved (plan/agent), 2 input error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .agents.executor import execute
from .agents.hybrid_agent import agent_loop
from .benchmark import generated_levels, level_directory, plot_scores, run_benchmark, summarize, write_csv
from .config import ABPlannerConfig, get_config
from .errors import ABPlannerError
from .levels.generator import generate_level, make_params
from .levels.level_io import load_level, save_level
from .models.results import Stage
from .planning.cascade import build_problem, cascade
from .planning.plan_io import format_plan, load_plan, save_plan
from .planning.search import solve

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNSOLVED = 1
EXIT_INPUT_ERROR = 2

STAGE_CHOICES = {
    "full": Stage.FULL,
    "single": Stage.SINGLE_SHOT,
    "noblocks": Stage.NO_BLOCKS,
}


def _settings(args, config: ABPlannerConfig):
    search = config.get_search_config()
    timeouts = config.get_cascade_timeouts()
    updates = {}
    if getattr(args, "dt", None) is not None:
        updates["dt"] = args.dt
    if getattr(args, "timeout", None) is not None:
        updates["timeout"] = args.timeout
        timeouts = timeouts.model_copy(update={"single_shot": args.timeout, "no_blocks": args.timeout})
    if updates:
        search = search.model_validate({**search.model_dump(), **updates})
    return search, timeouts, config.get_domain_constants(), config.get_score_weights()


def _emit(args, payload: dict, lines: List[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        for line in lines:
            print(line)


# =================== SUBCOMMANDS ===================

def cmd_plan(args, config: ABPlannerConfig) -> int:
    level = load_level(args.level)
    search, timeouts, constants, _ = _settings(args, config)

    if args.stage == "auto":
        result = cascade(level, search, timeouts, constants, name=Path(args.level).stem)
        plan = result.decision
        solved = plan.stage is not Stage.DEFAULT
        attempts = [{"stage": a.stage.value, "status": a.status, "elapsed": a.elapsed} for a in result.attempts]
    else:
        stage = STAGE_CHOICES[args.stage]
        problem = build_problem(level, stage, search, constants, name=Path(args.level).stem)
        outcome = solve(problem, search, stage=stage)
        attempts = [{"stage": stage.value, "status": outcome.status.value, "elapsed": outcome.elapsed}]
        if outcome.plan is None:
            _emit(args, {"solved": False, "attempts": attempts},
                  [f"❌ No plan ({outcome.status.value}) after {outcome.elapsed:.2f}s"])
            return EXIT_UNSOLVED
        plan, solved = outcome.plan, True

    if args.out:
        save_plan(plan, args.out)
    _emit(
        args,
        {"solved": solved, "stage": plan.stage.value, "steps": [s.model_dump() for s in plan.steps],
         "attempts": attempts},
        [f"{'✅' if solved else '⚠️ '} Stage {plan.stage.value}"]
        + [f"   tick={s.tick} action={s.action}" for s in plan.steps]
        + ([f"💾 Plan saved to {args.out}"] if args.out else ["", format_plan(plan).rstrip()]),
    )
    return EXIT_OK if solved else EXIT_UNSOLVED


def cmd_simulate(args, config: ABPlannerConfig) -> int:
    level = load_level(args.level)
    plan = load_plan(args.plan)
    search, _, constants, weights = _settings(args, config)
    search = search.model_copy(update={"dt": plan.dt})
    execution = execute(level, [plan], search, constants, weights, name=Path(args.level).stem)
    if args.trace:
        Path(args.trace).write_text(execution.trace.dump())
    score = execution.score
    _emit(
        args,
        {"terminal": execution.trace.terminal.value, "score": score.model_dump(),
         "ticks": len(execution.trace.records)},
        [
            f"🎯 {execution.trace.terminal.value} after {len(execution.trace.records)} ticks",
            f"   Pigs killed: {score.pigs_killed}  Blocks destroyed: {score.blocks_destroyed}  "
            f"Unused birds: {score.unused_birds}",
            f"   Score: {score.total}",
        ] + ([f"💾 Trace saved to {args.trace}"] if args.trace else []),
    )
    return EXIT_OK


def cmd_agent(args, config: ABPlannerConfig) -> int:
    level = load_level(args.level)
    search, timeouts, constants, weights = _settings(args, config)
    result = agent_loop(level, search, timeouts, constants, weights, budget=args.budget,
                        name=Path(args.level).stem)
    _emit(
        args,
        result.model_dump(mode="json"),
        [
            f"{'✅ Solved' if result.solved else '❌ Unsolved'} ({result.terminal}) in {result.shots} shot(s)",
            f"   Stages: {', '.join(t.value for t in result.stage_tags) or '-'}",
            f"   Score: {result.score.total}",
        ],
    )
    return EXIT_OK if result.solved else EXIT_UNSOLVED


def cmd_bench(args, config: ABPlannerConfig) -> int:
    search, timeouts, constants, weights = _settings(args, config)
    settings = config.get_benchmark_settings()
    if args.workers is not None:
        settings = settings.model_copy(update={"workers": args.workers})
    if args.generate is not None:
        levels = generated_levels(args.generate, args.seed)
    elif args.levels:
        levels = level_directory(args.levels)
    else:
        raise argparse.ArgumentTypeError("bench needs a level directory or --generate N")

    rows, summary = run_benchmark(levels, search, timeouts, constants, weights, settings)
    if args.csv:
        write_csv(rows, args.csv)
    if args.plot:
        plot_scores(rows, args.plot)
    _emit(
        args,
        {"summary": summary.model_dump(), "rows": [r.model_dump(mode="json") for r in rows]},
        [
            f"📊 Solved {summary.solved}/{summary.levels}, mean score {summary.mean_score:.1f}",
            "   Stages: " + ", ".join(f"{k}={v}" for k, v in summary.stage_histogram.items()),
        ]
        + [f"   ⚠️  {r.level_id}: {r.error}" for r in rows if r.error]
        + ([f"💾 CSV saved to {args.csv}"] if args.csv else [])
        + ([f"💾 Plot saved to {args.plot}"] if args.plot else []),
    )
    return EXIT_OK


def cmd_gen(args, config: ABPlannerConfig) -> int:
    params = make_params(
        n_pigs=args.pigs,
        n_blocks=args.blocks,
        n_platforms=args.platforms,
        n_birds=args.birds,
        structure_prob=args.structure_prob,
        tnt_prob=args.tnt_prob,
    )
    level = generate_level(args.seed, params)
    save_level(level, args.out)
    _emit(
        args,
        {"out": args.out, "pigs": len(level.pigs), "blocks": len(level.blocks),
         "platforms": len(level.platforms), "birds": len(level.birds)},
        [f"✅ Level written to {args.out} ({len(level.pigs)} pigs, {len(level.blocks)} blocks, "
         f"{len(level.platforms)} platforms, {len(level.birds)} birds)"],
    )
    return EXIT_OK


# =================== PARSER ===================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ab-plan",
        description="Angry Birds hybrid planner",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Plan one shot with the simplification cascade
  ab-plan plan example_levels/exposed_pig.json --out shot.txt

  # Plan the full problem only
  ab-plan plan level.json --stage full --timeout 10

  # Replay a plan and dump the tick trace
  ab-plan simulate level.json shot.txt --trace trace.txt

  # Play a level shot by shot
  ab-plan agent level.json

  # Benchmark 20 generated levels
  ab-plan bench --generate 20 --seed 7 --csv results.csv

  # Generate a level
  ab-plan gen --seed 3 --pigs 2 --blocks 4 --out level.json
        """
    )
    parser.add_argument('--config', help='Path to JSON configuration file')
    parser.add_argument('--verbose', '-v', action='count', default=0, help='More logging (-v info, -vv debug)')
    parser.add_argument('--json', action='store_true', help='Machine-readable JSON output')
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="Plan the next shot for a level")
    p.add_argument("level", help="Level JSON file")
    p.add_argument("--stage", choices=["auto", *STAGE_CHOICES], default="auto",
                   help="auto runs the cascade (default)")
    p.add_argument("--timeout", type=float, help="Search timeout per stage in seconds")
    p.add_argument("--dt", type=float, help="Discretization step in seconds")
    p.add_argument("--out", help="Write the plan to this file")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("simulate", help="Replay a plan file against a level")
    p.add_argument("level", help="Level JSON file")
    p.add_argument("plan", help="Plan file")
    p.add_argument("--trace", help="Write the tick trace to this file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("agent", help="Play a level bird by bird")
    p.add_argument("level", help="Level JSON file")
    p.add_argument("--timeout", type=float, help="Search timeout per stage in seconds")
    p.add_argument("--budget", type=float, help="Wall-clock budget for the whole level")
    p.set_defaults(func=cmd_agent)

    p = sub.add_parser("bench", help="Run the agent over a set of levels")
    p.add_argument("levels", nargs="?", help="Directory of level JSON files")
    p.add_argument("--generate", type=int, metavar="N", help="Generate N levels instead")
    p.add_argument("--seed", type=int, default=0, help="First seed for --generate")
    p.add_argument("--timeout", type=float, help="Search timeout per stage in seconds")
    p.add_argument("--workers", type=int, help="Parallel worker processes")
    p.add_argument("--csv", help="Write per-level rows to this CSV file")
    p.add_argument("--plot", help="Write a sorted score chart (needs matplotlib)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="Generate a random level")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pigs", type=int, default=1)
    p.add_argument("--blocks", type=int, default=0)
    p.add_argument("--platforms", type=int, default=0)
    p.add_argument("--birds", type=int, default=3)
    p.add_argument("--structure-prob", type=float, default=0.5)
    p.add_argument("--tnt-prob", type=float, default=0.0)
    p.add_argument("--out", required=True, help="Output level JSON file")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = get_config(args.config)
        level_name = {0: config.get_log_level(), 1: "INFO"}.get(args.verbose, "DEBUG")
        logging.basicConfig(level=getattr(logging, level_name, logging.WARNING),
                            format="%(asctime)s %(levelname)s %(name)s: %(message)s")
        return args.func(args, config)
    except (ABPlannerError, FileNotFoundError, argparse.ArgumentTypeError) as e:
        logger.debug("Input error", exc_info=True)
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except KeyboardInterrupt:
        print("\n🛑 Interrupted")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
