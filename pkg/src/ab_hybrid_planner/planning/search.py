"""
Uniform-discretization forward search over a HybridProblem.

Breadth-first over decision sequences with quantized duplicate detection.
With ``macro_step`` the deterministic stretches between decision points
(no action applicable) are rolled out in one go; the result is the same
plan the naive tick-by-tick search returns.
"""

import heapq
import logging
import time
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Deque, Dict, Hashable, List, Optional, Tuple

from ..errors import InapplicableActionError, ModelError, PreconditionError
from ..hybrid.expr import Kind
from ..hybrid.model import WAIT, HybridProblem, State, Unit, applicable_actions, check_dt, goal_holds, tick
from ..models.results import Plan, PlanStep, Stage
from ..models.settings import SearchConfig

logger = logging.getLogger(__name__)

Decisions = Tuple[Tuple[int, str], ...]


class SearchStatus(str, Enum):
    SOLVED = "solved"
    FRONTIER_EXHAUSTED = "frontier-exhausted"
    HORIZON_EXHAUSTED = "horizon-exhausted"
    TIMEOUT = "timeout"


@dataclass
class SearchResult:
    """Outcome of one ``solve`` call; ``plan`` is None unless solved."""
    status: SearchStatus
    plan: Optional[Plan] = None
    expansions: int = 0
    elapsed: float = 0.0
    goal_tick: Optional[int] = None

    @property
    def solved(self) -> bool:
        return self.plan is not None


def quantize(state: State, config: SearchConfig) -> Hashable:
    """Duplicate-detection key: numeric fluents snapped to their unit grid, booleans verbatim."""
    grids = {
        Unit.METERS: config.position_grid,
        Unit.VELOCITY: config.velocity_grid,
        Unit.DEGREES: config.angle_grid,
    }
    key = []
    for decl, value in zip(state.schema, state.values):
        grid = grids.get(decl.unit)
        if decl.kind is Kind.BOOLEAN or grid is None:
            key.append(value)
        else:
            key.append(round(value / grid))
    return tuple(key)


def _plan(decisions: Decisions, stage: Stage, dt: float, elapsed: float) -> Plan:
    return Plan(
        steps=tuple(PlanStep(tick=k, action=a) for k, a in decisions),
        stage=stage,
        dt=dt,
        elapsed=elapsed,
    )


def validate_plan(problem: HybridProblem, plan: Plan) -> bool:
    """Replay ``plan`` from the initial state; True if the goal is reached after its last decision."""
    decisions = plan.decisions()
    last = max(decisions) if decisions else -1
    state = problem.initial
    if goal_holds(state, problem):
        return not decisions
    try:
        while state.tick < problem.horizon:
            state = tick(state, problem, decisions.get(state.tick, WAIT))
            if goal_holds(state, problem):
                return state.tick > last
    except InapplicableActionError as e:
        logger.debug(f"Plan replay failed: {e}")
        return False
    return False


class _Search:
    def __init__(self, problem: HybridProblem, config: SearchConfig, stage: Stage):
        self.problem = problem
        self.config = config
        self.stage = stage
        self.started = time.monotonic()
        self.deadline = self.started + config.timeout
        self.seen = set()
        self.expansions = 0
        self.ticks = 0
        self.horizon_hit = False

    def key(self, state: State) -> Hashable:
        return quantize(state, self.config)

    def expired(self, reserve_ticks: int = 0) -> bool:
        """Past the deadline, or too close to it to replay ``reserve_ticks`` ticks."""
        now = time.monotonic()
        if reserve_ticks and self.ticks:
            now += (now - self.started) / self.ticks * reserve_ticks
        return now >= self.deadline

    def step(self, state: State, decision: str) -> State:
        self.ticks += 1
        return tick(state, self.problem, decision)

    def branches(self, state: State) -> List[str]:
        return [WAIT] + applicable_actions(state, self.problem)

    def result(self, status: SearchStatus, decisions: Optional[Decisions] = None,
               goal_tick: Optional[int] = None) -> SearchResult:
        plan = None
        if decisions is not None:
            plan = _plan(decisions, self.stage, self.problem.dt, time.monotonic() - self.started)
            if not validate_plan(self.problem, plan):
                raise ModelError(f"plan for {self.problem.name or 'problem'} failed replay validation")
        elapsed = time.monotonic() - self.started
        logger.debug(
            f"Search {status.value} after {self.expansions} expansions in {elapsed:.3f}s"
            + (f" (goal at tick {goal_tick})" if goal_tick is not None else "")
        )
        return SearchResult(status, plan, self.expansions, elapsed, goal_tick)

    def exhausted(self) -> SearchResult:
        if self.horizon_hit:
            return self.result(SearchStatus.HORIZON_EXHAUSTED)
        return self.result(SearchStatus.FRONTIER_EXHAUSTED)

    def naive(self) -> SearchResult:
        root = self.problem.initial
        frontier: Deque[Tuple[State, Decisions]] = deque([(root, ())])
        self.seen.add(self.key(root))
        while frontier:
            if self.expired():
                return self.result(SearchStatus.TIMEOUT)
            state, decisions = frontier.popleft()
            if state.tick >= self.problem.horizon:
                self.horizon_hit = True
                continue
            self.expansions += 1
            for decision in self.branches(state):
                if self.expired():
                    return self.result(SearchStatus.TIMEOUT)
                child = self.step(state, decision)
                path = decisions if decision == WAIT else decisions + ((state.tick, decision),)
                if goal_holds(child, self.problem):
                    return self.result(SearchStatus.SOLVED, path, child.tick)
                key = self.key(child)
                if key in self.seen:
                    continue
                self.seen.add(key)
                frontier.append((child, path))
        return self.exhausted()

    def macro(self) -> SearchResult:
        root = self.problem.initial
        self.seen.add(self.key(root))
        heap: List[Tuple[int, int, State, Decisions]] = [(root.tick, 0, root, ())]
        pushed = 1
        best: Optional[Tuple[int, int, Decisions]] = None

        while heap:
            at, _, state, decisions = heapq.heappop(heap)
            if best is not None and at >= best[0]:
                break
            if at >= self.problem.horizon:
                self.horizon_hit = True
                continue
            self.expansions += 1
            for decision in self.branches(state):
                path = decisions if decision == WAIT else decisions + ((state.tick, decision),)
                child = self.step(state, decision)
                while True:
                    if self.expired(best[0] if best is not None else 0):
                        if best is not None:
                            return self.result(SearchStatus.SOLVED, best[2], best[0])
                        return self.result(SearchStatus.TIMEOUT)
                    if goal_holds(child, self.problem):
                        last = path[-1][0] if path else -1
                        candidate = (child.tick, -last, path)
                        if best is None or candidate[:2] < best[:2]:
                            best = candidate
                        break
                    key = self.key(child)
                    if key in self.seen:
                        break
                    self.seen.add(key)
                    if child.tick >= self.problem.horizon:
                        self.horizon_hit = True
                        break
                    if applicable_actions(child, self.problem):
                        heapq.heappush(heap, (child.tick, pushed, child, path))
                        pushed += 1
                        break
                    child = self.step(child, WAIT)

        if best is not None:
            return self.result(SearchStatus.SOLVED, best[2], best[0])
        return self.exhausted()


def solve(problem: HybridProblem, config: Optional[SearchConfig] = None,
          stage: Stage = Stage.FULL) -> SearchResult:
    """
    Search for a decision sequence reaching the problem's goal.

    Returns a SearchResult whose ``plan`` is set when solved; otherwise
    ``status`` tells frontier exhaustion, horizon exhaustion and timeout apart.
    """
    config = config or SearchConfig()
    check_dt(problem, config.dt)
    if goal_holds(problem.initial, problem):
        return SearchResult(SearchStatus.SOLVED, _plan((), stage, problem.dt, 0.0), goal_tick=0)
    search = _Search(problem, config, stage)
    return search.macro() if config.macro_step else search.naive()


def default_shot(problem: HybridProblem, angle: float = 45.0) -> Plan:
    """Release the active bird at the tick whose accumulated angle is closest to ``angle``."""
    state = problem.initial
    actions = applicable_actions(state, problem)
    if not actions:
        raise PreconditionError("no bird can be released from the initial state")
    action = actions[0]
    best_tick, best_gap = 0, abs(state["angle"] - angle)
    while state.tick < problem.horizon:
        nxt = tick(state, problem, WAIT)
        if nxt["angle"] == state["angle"] or action not in applicable_actions(nxt, problem):
            break
        state = nxt
        gap = abs(state["angle"] - angle)
        if gap < best_gap:
            best_tick, best_gap = state.tick, gap
    logger.debug(f"Default shot: {action} at tick {best_tick} (angle gap {best_gap:.3f})")
    return _plan(((best_tick, action),), Stage.DEFAULT, problem.dt, 0.0)


def release_angles(problem: HybridProblem) -> Dict[int, float]:
    """Accumulated launch angle at every tick where the active bird is still in the slingshot."""
    angles: Dict[int, float] = {}
    state = problem.initial
    while state.tick < problem.horizon and applicable_actions(state, problem):
        angles[state.tick] = state["angle"]
        state = tick(state, problem, WAIT)
    return angles
