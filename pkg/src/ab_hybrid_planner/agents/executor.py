"""
Plan replay against the translated model, scoring, and reconstruction of the
residual level after a shot.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from ..domain.translate import bird_fluent, bird_of_action, block_fluent, pig_fluent, translate, twang_name
from ..hybrid.expr import Value
from ..hybrid.model import WAIT, HybridProblem, State, TickRecord, check_dt, goal_holds, step
from ..hybrid.trace import dump_trace
from ..models.level import Bird, Block, Level, Pig
from ..models.results import Plan, ScoreReport, Stage
from ..models.settings import DomainConstants, ScoreWeights, SearchConfig

logger = logging.getLogger(__name__)


class Terminal(str, Enum):
    ALL_PIGS_DEAD = "all-pigs-dead"
    BIRDS_EXHAUSTED = "birds-exhausted"
    HORIZON = "horizon"
    SHOTS_EXHAUSTED = "shots-exhausted"


@dataclass
class Trace:
    """Every tick executed, in order, and how the run ended."""
    records: List[TickRecord] = field(default_factory=list)
    terminal: Optional[Terminal] = None

    def fired(self) -> List[str]:
        return [name for record in self.records for name in record.fired]

    def signature(self) -> Tuple[Tuple[int, str, Tuple[str, ...], Tuple[Value, ...]], ...]:
        """Comparable summary used to check replay determinism."""
        return tuple(
            (r.after.tick, r.decision, r.fired, r.after.values) for r in self.records
        )

    def dump(self) -> str:
        return dump_trace(self.records)


@dataclass
class Execution:
    trace: Trace
    score: ScoreReport
    final_state: State
    problem: HybridProblem

    @property
    def solved(self) -> bool:
        return self.trace.terminal is Terminal.ALL_PIGS_DEAD


def count_dead(problem: HybridProblem, state: State) -> Tuple[int, int]:
    """(dead pigs, destroyed blocks) in ``state``."""
    pigs = sum(1 for d in problem.schema if d.name.startswith("pig_alive_") and not state[d.name])
    blocks = sum(1 for d in problem.schema if d.name.startswith("block_dead_") and state[d.name])
    return pigs, blocks


def _pigs_alive(problem: HybridProblem, state: State) -> int:
    return sum(1 for d in problem.schema if d.name.startswith("pig_alive_") and state[d.name])


def _run_shot(problem: HybridProblem, state: State, shot: Plan, trace: Trace) -> State:
    """
    Play one shot from ``state``. Tick indices are relative to the shot start;
    simplified-stage decisions are bound to the bird currently in the slingshot.
    """
    start = state.tick
    rebind = shot.stage is not Stage.FULL
    active = int(state["active_bird"])
    decisions = {}
    for s in shot.steps:
        problem.action(s.action)
        name = twang_name(active) if rebind else s.action
        decisions[start + s.tick] = name
    if not decisions:
        return state

    last = max(decisions)
    launched = bird_of_action(decisions[last])
    end = start + problem.horizon
    while state.tick < end:
        record = step(state, problem, decisions.get(state.tick, WAIT))
        trace.records.append(record)
        state = record.after
        if state.tick > last and (
            int(state["active_bird"]) != launched
            or state[bird_fluent("bird_expired", launched)]
            or goal_holds(state, problem)
        ):
            return state
    trace.terminal = Terminal.HORIZON
    return state


def execute(level: Level, shots: Sequence[Plan], config: Optional[SearchConfig] = None,
            constants: Optional[DomainConstants] = None,
            weights: Optional[ScoreWeights] = None, name: str = "") -> Execution:
    """Replay ``shots`` in order through the translated model and score the outcome."""
    config = config or SearchConfig()
    weights = weights or ScoreWeights()
    problem = translate(level, constants, dt=config.dt, horizon=config.horizon, name=name)
    for shot in shots:
        check_dt(problem, shot.dt)

    trace = Trace()
    state = problem.initial
    for n, shot in enumerate(shots):
        if _pigs_alive(problem, state) == 0:
            break
        if int(state["active_bird"]) >= len(level.birds) or state["birds_remaining"] <= 0:
            logger.warning(f"Ignoring {len(shots) - n} shot(s): no birds left")
            break
        state = _run_shot(problem, state, shot, trace)
        if trace.terminal is Terminal.HORIZON:
            break

    pigs, blocks = count_dead(problem, state)
    if _pigs_alive(problem, state) == 0:
        trace.terminal = Terminal.ALL_PIGS_DEAD
    elif trace.terminal is None:
        trace.terminal = Terminal.BIRDS_EXHAUSTED if state["birds_remaining"] <= 0 else Terminal.SHOTS_EXHAUSTED
    unused = int(state["birds_remaining"]) if trace.terminal is Terminal.ALL_PIGS_DEAD else 0
    score = ScoreReport.from_counts(pigs, blocks, unused, weights)
    logger.debug(
        f"Executed {len(shots)} shot(s) over {len(trace.records)} ticks: "
        f"{pigs} pigs, {blocks} blocks, terminal {trace.terminal.value}"
    )
    return Execution(trace, score, state, problem)


def rebuild_residual(level: Level, problem: HybridProblem, state: State) -> Optional[Level]:
    """
    The level left after a shot: released birds, dead pigs and destroyed blocks
    removed, surviving blocks at their current position, birds renumbered.
    Returns None when no bird is left to launch.
    """
    birds = [
        bird for i, bird in enumerate(level.birds)
        if not state[bird_fluent("bird_released", i)]
    ]
    if not birds:
        return None
    pigs = [
        Pig(x=state[pig_fluent("x_pig", j)], y=state[pig_fluent("y_pig", j)],
            radius=pig.radius, mass=pig.mass)
        for j, pig in enumerate(level.pigs)
        if state[pig_fluent("pig_alive", j)]
    ]
    blocks = [
        Block(x=state[block_fluent("x_block", k)], y=state[block_fluent("y_block", k)],
              width=block.width, height=block.height,
              material=block.material, explosive=block.explosive)
        for k, block in enumerate(level.blocks)
        if not state[block_fluent("block_dead", k)]
    ]
    return Level(
        slingshot=level.slingshot,
        birds=tuple(Bird(id=n, type=b.type, mass=b.mass) for n, b in enumerate(birds)),
        pigs=tuple(pigs),
        blocks=tuple(blocks),
        platforms=level.platforms,
        physics=level.physics,
    )

