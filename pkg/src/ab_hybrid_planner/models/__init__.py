from .level import Bird, Block, Level, Material, Physics, Pig, Platform, Point
from .results import (
    STAGE_ORDER,
    AgentResult,
    BenchmarkRow,
    BenchmarkSummary,
    Plan,
    PlanStep,
    ScoreReport,
    ShotDecision,
    Stage,
)
from .settings import (
    BenchmarkSettings,
    CascadeTimeouts,
    DomainConstants,
    MaterialProperties,
    MaterialTable,
    ScoreWeights,
    SearchConfig,
)

__all__ = [
    "Bird", "Block", "Level", "Material", "Physics", "Pig", "Platform", "Point",
    "STAGE_ORDER", "AgentResult", "BenchmarkRow", "BenchmarkSummary", "Plan", "PlanStep",
    "ScoreReport", "ShotDecision", "Stage",
    "BenchmarkSettings", "CascadeTimeouts", "DomainConstants", "MaterialProperties",
    "MaterialTable", "ScoreWeights", "SearchConfig",
]
