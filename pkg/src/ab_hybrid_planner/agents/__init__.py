"""Shot execution, the closed-loop agent and the ballistic oracle."""

from .executor import Execution, Terminal, Trace, count_dead, execute, rebuild_residual
from .hybrid_agent import HybridAgent, LevelWorldModel, agent_loop
from .oracle import OracleReport, flight_path, oracle_hit, oracle_report

__all__ = [
    "Execution", "Terminal", "Trace", "count_dead", "execute", "rebuild_residual",
    "HybridAgent", "LevelWorldModel", "agent_loop",
    "OracleReport", "flight_path", "oracle_hit", "oracle_report",
]
