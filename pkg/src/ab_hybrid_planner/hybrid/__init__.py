"""Expression language and hybrid-automaton step semantics."""

from .expr import (
    DEG_TO_RAD,
    Expr,
    Kind,
    approx_cos,
    approx_sin,
    evaluate,
)
from .model import (
    CASCADE_CAP,
    WAIT,
    ActionDef,
    Assign,
    EventDef,
    FluentDecl,
    FluentSchema,
    HybridProblem,
    ProcessDef,
    Rate,
    State,
    TickRecord,
    Unit,
    advance,
    applicable_actions,
    apply_action,
    fire_events,
    goal_holds,
    step,
    tick,
)

__all__ = [
    "DEG_TO_RAD", "Expr", "Kind", "approx_cos", "approx_sin", "evaluate",
    "CASCADE_CAP", "WAIT", "ActionDef", "Assign", "EventDef", "FluentDecl", "FluentSchema",
    "HybridProblem", "ProcessDef", "Rate", "State", "TickRecord", "Unit",
    "advance", "applicable_actions", "apply_action", "fire_events", "goal_holds", "step", "tick",
]
