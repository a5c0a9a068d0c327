"""Plans, scores and benchmark rows exchanged between planner, executor and CLI."""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .settings import ScoreWeights


class Stage(str, Enum):
    """Which cascade stage produced a shot decision."""
    FULL = "full"
    SINGLE_SHOT = "single-shot"
    NO_BLOCKS = "single-shot-no-blocks"
    DEFAULT = "default-action"


STAGE_ORDER = (Stage.FULL, Stage.SINGLE_SHOT, Stage.NO_BLOCKS, Stage.DEFAULT)


class PlanStep(BaseModel):
    model_config = ConfigDict(frozen=True)

    tick: int = Field(ge=0)
    action: str


class Plan(BaseModel):
    """Timed decisions; ticks count from the moment the plan starts."""
    model_config = ConfigDict(frozen=True)

    steps: Tuple[PlanStep, ...] = ()
    stage: Stage
    dt: float = Field(gt=0)
    elapsed: float = Field(default=0.0, ge=0)

    @field_validator("steps")
    @classmethod
    def _strictly_increasing(cls, steps: Tuple[PlanStep, ...]) -> Tuple[PlanStep, ...]:
        ticks = [s.tick for s in steps]
        if any(b <= a for a, b in zip(ticks, ticks[1:])):
            raise ValueError(f"plan ticks must be strictly increasing, got {ticks}")
        return steps

    @property
    def actions(self) -> List[str]:
        return [s.action for s in self.steps]

    def decisions(self) -> Dict[int, str]:
        return {s.tick: s.action for s in self.steps}

    def same_decisions(self, other: "Plan") -> bool:
        return self.steps == other.steps and self.stage == other.stage and self.dt == other.dt


# Shot decision handed to the executor: a searched plan or the default action.
ShotDecision = Plan


class ScoreReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    pigs_killed: int = Field(default=0, ge=0)
    blocks_destroyed: int = Field(default=0, ge=0)
    unused_birds: int = Field(default=0, ge=0)
    pig_points: int = Field(default=0, ge=0)
    block_points: int = Field(default=0, ge=0)
    bird_points: int = Field(default=0, ge=0)
    total: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _total_is_sum(self) -> "ScoreReport":
        if self.total != self.pig_points + self.block_points + self.bird_points:
            raise ValueError("score total must equal the sum of its components")
        return self

    @classmethod
    def from_counts(cls, pigs_killed: int, blocks_destroyed: int, unused_birds: int,
                    weights: ScoreWeights) -> "ScoreReport":
        pig_points = pigs_killed * weights.pig_points
        block_points = blocks_destroyed * weights.block_points
        bird_points = unused_birds * weights.bird_points
        return cls(
            pigs_killed=pigs_killed,
            blocks_destroyed=blocks_destroyed,
            unused_birds=unused_birds,
            pig_points=pig_points,
            block_points=block_points,
            bird_points=bird_points,
            total=pig_points + block_points + bird_points,
        )


class AgentResult(BaseModel):
    """Outcome of the closed-loop agent on one level."""
    score: ScoreReport
    stage_tags: List[Stage] = Field(default_factory=list)
    plan_ms: List[float] = Field(default_factory=list)
    decisions: List[Plan] = Field(default_factory=list)
    solved: bool = False
    terminal: str = ""

    @property
    def shots(self) -> int:
        return len(self.stage_tags)


class BenchmarkRow(BaseModel):
    level_id: str
    solved: bool = False
    score: int = 0
    shots: int = 0
    stage_tags: List[Stage] = Field(default_factory=list)
    plan_ms: List[float] = Field(default_factory=list)
    error: Optional[str] = None


class BenchmarkSummary(BaseModel):
    levels: int
    solved: int
    mean_score: float
    stage_histogram: Dict[str, int]
