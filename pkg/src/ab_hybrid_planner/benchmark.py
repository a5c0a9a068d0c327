"""
Benchmark harness: run the agent over a level set, one CSV row per level,
plus a summary with solved count, mean score and stage-tag histogram.
"""

import csv
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from .agents.hybrid_agent import agent_loop
from .errors import ABPlannerError, BenchmarkError
from .levels.generator import generate_level, sample_params
from .levels.level_io import load_level
from .models.level import Level
from .models.results import STAGE_ORDER, BenchmarkRow, BenchmarkSummary, Stage
from .models.settings import BenchmarkSettings, CascadeTimeouts, DomainConstants, ScoreWeights, SearchConfig

logger = logging.getLogger(__name__)

CSV_HEADER = ["level_id", "solved", "score", "shots", "stage_tags", "plan_ms"]

LevelSet = Sequence[Tuple[str, Level]]


def generated_levels(count: int, seed: int) -> List[Tuple[str, Level]]:
    """``count`` generated levels with seeds seed, seed+1, ..."""
    levels = []
    for s in range(seed, seed + count):
        levels.append((f"gen-{s:04d}", generate_level(s, sample_params(s))))
    return levels


def level_directory(path: Union[str, Path]) -> List[Tuple[str, Level]]:
    path = Path(path)
    if not path.is_dir():
        raise BenchmarkError(f"not a directory: {path}")
    return [(f.stem, load_level(f)) for f in sorted(path.glob("*.json"))]


def run_level(level_id: str, level: Level, config: SearchConfig, timeouts: CascadeTimeouts,
              constants: DomainConstants, weights: ScoreWeights, budget: float) -> BenchmarkRow:
    """One row; failures are recorded in the row instead of raised."""
    try:
        result = agent_loop(level, config, timeouts, constants, weights, budget=budget, name=level_id)
    except ABPlannerError as e:
        logger.error(f"Level {level_id} failed: {e}")
        return BenchmarkRow(level_id=level_id, error=str(e))
    return BenchmarkRow(
        level_id=level_id,
        solved=result.solved,
        score=result.score.total,
        shots=result.shots,
        stage_tags=result.stage_tags,
        plan_ms=result.plan_ms,
    )


def _run_level_args(args) -> BenchmarkRow:
    return run_level(*args)


def summarize(rows: Sequence[BenchmarkRow]) -> BenchmarkSummary:
    histogram = {stage.value: 0 for stage in STAGE_ORDER}
    for row in rows:
        for tag in row.stage_tags:
            histogram[Stage(tag).value] += 1
    return BenchmarkSummary(
        levels=len(rows),
        solved=sum(1 for r in rows if r.solved),
        mean_score=sum(r.score for r in rows) / len(rows) if rows else 0.0,
        stage_histogram=histogram,
    )


def run_benchmark(levels: LevelSet, config: Optional[SearchConfig] = None,
                  timeouts: Optional[CascadeTimeouts] = None,
                  constants: Optional[DomainConstants] = None,
                  weights: Optional[ScoreWeights] = None,
                  settings: Optional[BenchmarkSettings] = None
                  ) -> Tuple[List[BenchmarkRow], BenchmarkSummary]:
    """Run the agent on every level; rows come back in level-id order."""
    if not levels:
        raise BenchmarkError("empty level set")
    config = config or SearchConfig()
    timeouts = timeouts or CascadeTimeouts()
    constants = constants or DomainConstants()
    weights = weights or ScoreWeights()
    settings = settings or BenchmarkSettings()

    ordered = sorted(levels, key=lambda item: item[0])
    jobs = [
        (level_id, level, config, timeouts, constants, weights, settings.level_budget)
        for level_id, level in ordered
    ]
    logger.info(f"Benchmark: {len(jobs)} levels, {settings.workers} worker(s)")

    if settings.workers > 1:
        with ProcessPoolExecutor(max_workers=settings.workers) as pool:
            rows = list(pool.map(_run_level_args, jobs))
    else:
        rows = []
        for n, job in enumerate(jobs, start=1):
            row = _run_level_args(job)
            logger.info(f"[{n}/{len(jobs)}] {row.level_id}: solved={row.solved} score={row.score}")
            rows.append(row)

    summary = summarize(rows)
    logger.info(f"Benchmark done: {summary.solved}/{summary.levels} solved, mean score {summary.mean_score:.1f}")
    return rows, summary


# =================== CSV ===================

def format_csv(rows: Sequence[BenchmarkRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([
            row.level_id,
            "true" if row.solved else "false",
            row.score,
            row.shots,
            ";".join(Stage(t).value for t in row.stage_tags),
            ";".join(f"{ms:.1f}" for ms in row.plan_ms),
        ])
    return out.getvalue()


def write_csv(rows: Sequence[BenchmarkRow], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(format_csv(rows))
    return path


def parse_csv(text: str) -> List[BenchmarkRow]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise BenchmarkError(f"unexpected CSV header: {reader.fieldnames}")
    rows = []
    for record in reader:
        rows.append(BenchmarkRow(
            level_id=record["level_id"],
            solved=record["solved"] == "true",
            score=int(record["score"]),
            shots=int(record["shots"]),
            stage_tags=[Stage(t) for t in record["stage_tags"].split(";") if t],
            plan_ms=[float(ms) for ms in record["plan_ms"].split(";") if ms],
        ))
    return rows


def read_csv(path: Union[str, Path]) -> List[BenchmarkRow]:
    return parse_csv(Path(path).read_text())


def plot_scores(rows: Sequence[BenchmarkRow], path: Union[str, Path]) -> Path:
    """Per-level scores, sorted, as a bar chart (needs the ``plot`` extra)."""
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        raise BenchmarkError("plotting needs matplotlib: pip install 'ab-hybrid-planner[plot]'") from None

    scores = sorted(r.score for r in rows)
    fig, ax = plt.subplots(figsize=(10, 4))
    ax.bar(range(len(scores)), scores, color="tab:red")
    ax.set_xlabel("level (sorted by score)")
    ax.set_ylabel("score")
    ax.set_title(f"{sum(r.solved for r in rows)}/{len(rows)} levels solved")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path)
    plt.close(fig)
    return path
