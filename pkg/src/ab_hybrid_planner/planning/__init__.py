"""Forward search, the simplification cascade and plan files."""

from .cascade import CascadeResult, StageAttempt, build_problem, cascade
from .plan_io import format_plan, load_plan, parse_plan, save_plan
from .search import SearchResult, SearchStatus, default_shot, quantize, release_angles, solve, validate_plan

__all__ = [
    "CascadeResult", "StageAttempt", "build_problem", "cascade",
    "format_plan", "load_plan", "parse_plan", "save_plan",
    "SearchResult", "SearchStatus", "default_shot", "quantize", "release_angles", "solve", "validate_plan",
]
