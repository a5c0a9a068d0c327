"""
Simplification cascade for one shot: single-shot problem, then the
single-shot-no-blocks relaxation, then the default release.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional

from ..domain.translate import single_shot, strip_blocks, translate
from ..errors import PreconditionError
from ..hybrid.model import HybridProblem
from ..models.level import Level
from ..models.results import Plan, Stage
from ..models.settings import CascadeTimeouts, DomainConstants, SearchConfig
from .search import SearchResult, SearchStatus, default_shot, solve

logger = logging.getLogger(__name__)

SKIPPED = "skipped"


@dataclass
class StageAttempt:
    stage: Stage
    status: str
    elapsed: float = 0.0
    expansions: int = 0


@dataclass
class CascadeResult:
    """The shot decision plus what each stage tried."""
    decision: Plan
    attempts: List[StageAttempt] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def stage(self) -> Stage:
        return self.decision.stage

    @property
    def plan_ms(self) -> float:
        return self.elapsed * 1000.0


def build_problem(level: Level, stage: Stage, config: Optional[SearchConfig] = None,
                  constants: Optional[DomainConstants] = None, name: str = "") -> HybridProblem:
    """The problem a given stage plans against."""
    config = config or SearchConfig()
    problem = translate(level, constants, dt=config.dt, horizon=config.horizon, name=name)
    if stage is Stage.FULL:
        return problem
    problem = single_shot(problem)
    if stage is Stage.NO_BLOCKS:
        problem = strip_blocks(problem)
    return problem


def _attempt(problem: HybridProblem, config: SearchConfig, stage: Stage,
             timeout: float) -> SearchResult:
    logger.info(f"Stage {stage.value}: searching with {timeout:.1f}s timeout")
    result = solve(problem, config.model_copy(update={"timeout": timeout}), stage=stage)
    logger.info(
        f"Stage {stage.value}: {result.status.value} "
        f"({result.expansions} expansions, {result.elapsed:.2f}s)"
    )
    return result


def cascade(level: Level, config: Optional[SearchConfig] = None,
            timeouts: Optional[CascadeTimeouts] = None,
            constants: Optional[DomainConstants] = None,
            budget: Optional[float] = None, name: str = "") -> CascadeResult:
    """
    Decide the next shot for ``level``.

    Each search stage gets its own timeout; ``budget`` (seconds) caps the
    total time spent searching, falling back to the default shot once used up.
    """
    if not level.birds:
        raise PreconditionError("no birds remaining")
    config = config or SearchConfig()
    timeouts = timeouts or CascadeTimeouts()
    started = time.monotonic()
    attempts: List[StageAttempt] = []

    if not level.pigs:
        # goal already holds: nothing to shoot at
        logger.info("No pigs left: returning an empty plan")
        attempts.append(StageAttempt(Stage.SINGLE_SHOT, SearchStatus.SOLVED.value))
        return CascadeResult(Plan(stage=Stage.SINGLE_SHOT, dt=config.dt), attempts, time.monotonic() - started)

    def remaining(limit: float) -> float:
        if budget is None:
            return limit
        return min(limit, budget - (time.monotonic() - started))

    base = build_problem(level, Stage.SINGLE_SHOT, config, constants, name)
    relaxed = strip_blocks(base)
    stages = [
        (Stage.SINGLE_SHOT, base, timeouts.single_shot),
        (Stage.NO_BLOCKS, relaxed, timeouts.no_blocks),
    ]

    for stage, problem, limit in stages:
        if stage is Stage.NO_BLOCKS and relaxed is base:
            # Nothing to relax: the search would repeat stage one.
            logger.info("Stage single-shot-no-blocks: skipped, level has no blocks")
            attempts.append(StageAttempt(stage, SKIPPED))
            continue
        timeout = remaining(limit)
        if timeout <= 0:
            attempts.append(StageAttempt(stage, SearchStatus.TIMEOUT.value))
            continue
        result = _attempt(problem, config, stage, timeout)
        attempts.append(StageAttempt(stage, result.status.value, result.elapsed, result.expansions))
        if result.plan is not None:
            return CascadeResult(result.plan, attempts, time.monotonic() - started)

    decision = default_shot(base, timeouts.default_angle)
    attempts.append(StageAttempt(Stage.DEFAULT, SearchStatus.SOLVED.value))
    logger.info(f"Falling back to default shot: {decision.steps[0].action} at tick {decision.steps[0].tick}")
    return CascadeResult(decision, attempts, time.monotonic() - started)
