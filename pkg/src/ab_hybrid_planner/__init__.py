"""
Angry Birds hybrid planner.

Levels are translated into a hybrid automaton (actions, must-fire events,
continuous processes), searched by uniform discretization, and played shot
by shot through a simplification cascade.
"""

__version__ = "0.1.0"

from .agents import HybridAgent, agent_loop, execute, oracle_hit
from .config import ABPlannerConfig, get_config
from .domain import translate
from .errors import ABPlannerError
from .levels import generate_level, load_level, parse_level
from .models import Level, Plan, Stage
from .planning import cascade, solve

__all__ = [
    "__version__",
    "HybridAgent", "agent_loop", "execute", "oracle_hit",
    "ABPlannerConfig", "get_config",
    "translate",
    "ABPlannerError",
    "generate_level", "load_level", "parse_level",
    "Level", "Plan", "Stage",
    "cascade", "solve",
]
