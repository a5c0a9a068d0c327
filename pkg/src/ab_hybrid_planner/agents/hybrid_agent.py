"""
Closed-loop agent: plan one shot with the cascade, execute it, observe the
outcome, rebuild the residual level, repeat.
"""

import logging
import time
from typing import Any, Dict, List, Optional

from ..models.level import Level
from ..models.results import AgentResult, Plan, ScoreReport, Stage
from ..models.settings import CascadeTimeouts, DomainConstants, ScoreWeights, SearchConfig
from ..planning.cascade import CascadeResult, cascade
from .executor import Execution, Terminal, count_dead, execute, rebuild_residual

logger = logging.getLogger(__name__)


class LevelWorldModel:
    """What the agent knows about the level between shots."""

    def __init__(self, level: Level):
        self.original = level
        self.reset()

    def update(self, execution: Execution) -> None:
        """Fold one executed shot into the world model."""
        pigs, blocks = count_dead(execution.problem, execution.final_state)
        self.pigs_killed += pigs
        self.blocks_destroyed += blocks
        self.history.append(execution)
        self.residual = rebuild_residual(self.residual, execution.problem, execution.final_state)

    @property
    def pigs_left(self) -> int:
        return len(self.original.pigs) - self.pigs_killed

    @property
    def birds_left(self) -> int:
        return len(self.residual.birds) if self.residual is not None else 0

    @property
    def done(self) -> bool:
        return self.pigs_left == 0 or self.residual is None

    def get_state_summary(self) -> Dict[str, Any]:
        return {
            "shots": len(self.history),
            "pigs_left": self.pigs_left,
            "birds_left": self.birds_left,
            "blocks_destroyed": self.blocks_destroyed,
        }

    def reset(self) -> None:
        self.residual: Optional[Level] = self.original
        self.pigs_killed = 0
        self.blocks_destroyed = 0
        self.history: List[Execution] = []


class HybridAgent:
    """
    Plays a level one bird at a time.

    Each turn: ``reason`` runs the cascade on the residual level, ``execute``
    replays the decision and ``perceive`` updates the world model.
    """

    def __init__(self, level: Level, config: Optional[SearchConfig] = None,
                 timeouts: Optional[CascadeTimeouts] = None,
                 constants: Optional[DomainConstants] = None,
                 weights: Optional[ScoreWeights] = None,
                 budget: Optional[float] = None, name: str = ""):
        self.world_model = LevelWorldModel(level)
        self.config = config or SearchConfig()
        self.timeouts = timeouts or CascadeTimeouts()
        self.constants = constants or DomainConstants()
        self.weights = weights or ScoreWeights()
        self.budget = budget
        self.name = name
        self.cascades: List[CascadeResult] = []
        self._started = time.monotonic()

    def _remaining_budget(self) -> Optional[float]:
        if self.budget is None:
            return None
        return max(0.0, self.budget - (time.monotonic() - self._started))

    def reason(self) -> CascadeResult:
        residual = self.world_model.residual
        shot = len(self.world_model.history) + 1
        logger.info(
            f"Shot {shot} on {self.name or 'level'}: {len(residual.pigs)} pigs, "
            f"{len(residual.blocks)} blocks, {len(residual.birds)} birds"
        )
        return cascade(residual, self.config, self.timeouts, self.constants,
                       budget=self._remaining_budget(), name=self.name)

    def execute(self, decision: Plan) -> Execution:
        return execute(self.world_model.residual, [decision], self.config, self.constants,
                       self.weights, name=self.name)

    def perceive(self, execution: Execution) -> None:
        self.world_model.update(execution)
        logger.debug(f"World model: {self.world_model.get_state_summary()}")

    def run(self) -> AgentResult:
        self._started = time.monotonic()
        while not self.world_model.done:
            result = self.reason()
            self.cascades.append(result)
            self.perceive(self.execute(result.decision))
        return self.result()

    def result(self) -> AgentResult:
        wm = self.world_model
        solved = wm.pigs_left == 0
        unused = wm.birds_left if solved else 0
        score = ScoreReport.from_counts(wm.pigs_killed, wm.blocks_destroyed, unused, self.weights)
        terminal = Terminal.ALL_PIGS_DEAD if solved else Terminal.BIRDS_EXHAUSTED
        tags: List[Stage] = [c.stage for c in self.cascades]
        logger.info(
            f"Level {self.name or ''} {'solved' if solved else 'unsolved'}: "
            f"score {score.total}, stages {[t.value for t in tags]}"
        )
        return AgentResult(
            score=score,
            stage_tags=tags,
            plan_ms=[c.plan_ms for c in self.cascades],
            decisions=[c.decision for c in self.cascades],
            solved=solved,
            terminal=terminal.value,
        )


def agent_loop(level: Level, config: Optional[SearchConfig] = None,
               timeouts: Optional[CascadeTimeouts] = None,
               constants: Optional[DomainConstants] = None,
               weights: Optional[ScoreWeights] = None,
               budget: Optional[float] = None, name: str = "") -> AgentResult:
    """Play ``level`` to the end with the cascade agent."""
    return HybridAgent(level, config, timeouts, constants, weights, budget, name).run()
