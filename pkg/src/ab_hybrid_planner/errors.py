"""
Exception hierarchy for the Angry Birds hybrid planner.

Library code raises these; the CLI maps the input-side ones to exit code 2.
"""

from typing import List, Optional


class ABPlannerError(Exception):
    """Base class for every error raised by this package."""


class ModelError(ABPlannerError):
    """Malformed hybrid model: unknown fluent, bad typing, retriggering event, duplicate flow."""


class ExprTypeError(ModelError):
    """An expression node was built with children of the wrong kind."""


class EvaluationError(ABPlannerError):
    """Runtime failure while evaluating an expression."""

    def __init__(self, message: str, subexpression: Optional[str] = None):
        super().__init__(message)
        self.subexpression = subexpression


class DomainError(EvaluationError):
    """An intrinsic function received an argument outside its domain."""


class InapplicableActionError(ABPlannerError):
    """An action was applied in a state where its precondition is false."""


class CascadeDivergenceError(ABPlannerError):
    """Event firing did not reach quiescence within the cascade cap."""

    def __init__(self, message: str, log_tail: List[str]):
        super().__init__(message)
        self.log_tail = log_tail


class ConfigurationError(ABPlannerError):
    """Invalid configuration values or a config/problem mismatch."""


class PreconditionError(ABPlannerError):
    """An operation was called outside its documented precondition."""


class DegenerateGeometryError(ABPlannerError):
    """Geometry that a formula cannot handle, e.g. coincident centres."""


class LevelFormatError(ABPlannerError):
    """A level document failed validation."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class PlanFormatError(ABPlannerError):
    """A plan file could not be parsed."""


class GenerationError(ABPlannerError):
    """The level generator was asked for an infeasible layout."""


class BenchmarkError(ABPlannerError):
    """Benchmark harness usage error (e.g. empty level set)."""
