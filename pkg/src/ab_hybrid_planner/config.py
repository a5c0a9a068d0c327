"""
Configuration management for the Angry Birds hybrid planner.
Handles config file discovery, environment overrides and validated settings.
"""

import os
import json
import logging
from pathlib import Path
from typing import Optional, Dict, Any, List, Type, TypeVar

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError

from .errors import ConfigurationError
from .models.level import Physics
from .models.settings import (
    BenchmarkSettings,
    CascadeTimeouts,
    DomainConstants,
    MaterialTable,
    ScoreWeights,
    SearchConfig,
)

logger = logging.getLogger(__name__)

CONFIG_FILENAME = ".abplan.config.json"

_Model = TypeVar("_Model", bound=BaseModel)


class ABPlannerConfig:
    """Centralized configuration for planning, physics constants, scoring and benchmarks."""

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize configuration.

        Args:
            config_file: Optional path to custom config file
        """
        self.project_root = self._find_project_root()
        self.config_file = Path(config_file) if config_file else self._find_config_file()

        # Load configuration hierarchy:
        # 1. JSON config file (if exists)
        # 2. Environment variables
        # 3. Defaults
        self.explicit_config = self._load_config_file()

        load_dotenv(self.project_root / ".env")

    def _find_config_file(self) -> Optional[Path]:
        """Find configuration file in standard locations."""
        env_config_file = os.getenv("ABPLAN_CONFIG_FILE")
        if env_config_file and Path(env_config_file).exists():
            logger.info(f"Using config file from environment: {env_config_file}")
            return Path(env_config_file)

        original_cwd = Path(os.environ.get("PWD", os.getcwd()))

        possible_locations = [
            Path.cwd() / CONFIG_FILENAME,
            original_cwd / CONFIG_FILENAME,
            self.project_root / CONFIG_FILENAME,
            Path.home() / ".config" / "abplan" / "config.json",
        ]

        for location in possible_locations:
            if location.exists():
                logger.info(f"Found config file: {location}")
                return location
        return None

    def _find_project_root(self) -> Path:
        """Find the project root directory."""
        current = Path(__file__).parent
        while current != current.parent:
            if (current / "pyproject.toml").exists():
                return current
            current = current.parent
        return Path.cwd()

    def _load_config_file(self) -> Dict[str, Any]:
        """Load configuration from JSON file if it exists."""
        if not self.config_file or not Path(self.config_file).exists():
            return {}

        try:
            with open(self.config_file, "r") as f:
                config = json.load(f)
                logger.info(f"Loaded configuration from: {self.config_file}")
                return config
        except (json.JSONDecodeError, IOError) as e:
            logger.warning(f"Failed to load config file {self.config_file}: {e}")
            return {}

    def _section(self, name: str) -> Dict[str, Any]:
        section = self.explicit_config.get(name, {})
        if not isinstance(section, dict):
            raise ConfigurationError(f"config section '{name}' must be an object")
        return {k: v for k, v in section.items() if not k.startswith("_")}

    def _env_override(self, values: Dict[str, Any], key: str, env_var: str) -> None:
        """Environment variables fill in keys the config file leaves unset."""
        if key in values:
            return
        env_value = os.getenv(env_var)
        if env_value:
            logger.debug(f"Using environment variable {env_var}: {env_value}")
            values[key] = env_value

    def _build(self, model: Type[_Model], values: Dict[str, Any], section: str) -> _Model:
        try:
            return model(**values)
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(p) for p in (section, *first["loc"]))
            raise ConfigurationError(f"invalid configuration at {where}: {first['msg']}") from None

    # =================== TYPED SETTINGS ===================

    def get_search_config(self) -> SearchConfig:
        values = self._section("search")
        self._env_override(values, "dt", "ABPLAN_DT")
        self._env_override(values, "horizon", "ABPLAN_HORIZON")
        return self._build(SearchConfig, values, "search")

    def get_cascade_timeouts(self) -> CascadeTimeouts:
        values = self._section("cascade")
        self._env_override(values, "single_shot", "ABPLAN_STAGE_TIMEOUT")
        self._env_override(values, "no_blocks", "ABPLAN_STAGE_TIMEOUT")
        return self._build(CascadeTimeouts, values, "cascade")

    def get_domain_constants(self) -> DomainConstants:
        values = self._section("physics")
        materials = self._section("materials")
        if materials:
            values["materials"] = self._build(MaterialTable, materials, "materials")
        return self._build(DomainConstants, values, "physics")

    def get_score_weights(self) -> ScoreWeights:
        return self._build(ScoreWeights, self._section("scoring"), "scoring")

    def get_benchmark_settings(self) -> BenchmarkSettings:
        values = self._section("benchmark")
        self._env_override(values, "level_budget", "ABPLAN_LEVEL_BUDGET")
        return self._build(BenchmarkSettings, values, "benchmark")

    def get_log_level(self) -> str:
        level = self._section("logging").get("level") or os.getenv("ABPLAN_LOG_LEVEL", "WARNING")
        return str(level).upper()

    # =================== SETUP AND VALIDATION ===================

    def validate_setup(self, angle_rate: Optional[float] = None) -> List[str]:
        """
        Validate every configuration section and return any issues.

        ``angle_rate`` is the aiming rate (deg/s) the angle grid is checked
        against; levels carry their own, so the level default is used when omitted.
        """
        rate = Physics().angle_rate if angle_rate is None else angle_rate
        issues = []
        getters = [
            ("search", self.get_search_config),
            ("cascade", self.get_cascade_timeouts),
            ("physics/materials", self.get_domain_constants),
            ("scoring", self.get_score_weights),
            ("benchmark", self.get_benchmark_settings),
        ]
        for name, getter in getters:
            try:
                getter()
            except ConfigurationError as e:
                issues.append(f"{name}: {e}")

        try:
            search = self.get_search_config()
            timeouts = self.get_cascade_timeouts()
            budget = self.get_benchmark_settings().level_budget
            step = search.dt * rate
            if search.angle_grid >= step:
                issues.append(
                    f"angle grid {search.angle_grid} merges neighbouring release angles "
                    f"(angle step is dt * angle_rate = {search.dt} * {rate} = {step})"
                )
            if timeouts.single_shot + timeouts.no_blocks > budget:
                issues.append(
                    f"stage timeouts ({timeouts.single_shot}s + {timeouts.no_blocks}s) exceed the "
                    f"per-level budget of {budget}s; later stages will be cut short"
                )
        except ConfigurationError:
            pass

        if self.get_log_level() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            issues.append(f"unknown log level: {self.get_log_level()}")
        return issues

    def generate_sample_config(self, output_path: str = CONFIG_FILENAME) -> Path:
        """Generate a sample configuration file holding every default."""
        sample_config = {
            "_comment": "Angry Birds hybrid planner configuration file",
            "_instructions": [
                "1. Every value is optional; delete what you do not want to override",
                "2. Run 'ab-plan-setup --check' to validate your configuration",
            ],
            "search": SearchConfig().model_dump(),
            "cascade": CascadeTimeouts().model_dump(),
            "materials": MaterialTable().model_dump(),
            "physics": DomainConstants().model_dump(exclude={"materials"}),
            "scoring": ScoreWeights().model_dump(),
            "benchmark": BenchmarkSettings().model_dump(),
            "logging": {"level": "WARNING"},
        }

        config_path = Path(output_path)
        with open(config_path, "w") as f:
            json.dump(sample_config, f, indent=2)
        return config_path

    def show_configuration_sources(self) -> Dict[str, Dict[str, str]]:
        """Show where each overridable value is coming from, for debugging."""
        sources = {}
        configs_to_check = [
            ("Time step", "search", "dt", "ABPLAN_DT", lambda: self.get_search_config().dt),
            ("Horizon", "search", "horizon", "ABPLAN_HORIZON", lambda: self.get_search_config().horizon),
            ("Stage timeout", "cascade", "single_shot", "ABPLAN_STAGE_TIMEOUT",
             lambda: self.get_cascade_timeouts().single_shot),
            ("Level budget", "benchmark", "level_budget", "ABPLAN_LEVEL_BUDGET",
             lambda: self.get_benchmark_settings().level_budget),
            ("Log level", "logging", "level", "ABPLAN_LOG_LEVEL", self.get_log_level),
        ]

        for name, section, key, env_var, getter_func in configs_to_check:
            try:
                value = str(getter_func())
            except ConfigurationError as e:
                value = f"INVALID ({e})"
            if key in self._section(section):
                source = f"config file: {self.config_file}"
            elif os.getenv(env_var):
                source = f"environment: {env_var}"
            else:
                source = "default"
            sources[name] = {"value": value, "source": source}
        return sources


# Global configuration instance
_config_instance = None


def get_config(config_file: Optional[str] = None) -> ABPlannerConfig:
    """Get the global configuration instance."""
    global _config_instance
    if _config_instance is None or config_file is not None:
        _config_instance = ABPlannerConfig(config_file)
    return _config_instance


def reset_config() -> None:
    global _config_instance
    _config_instance = None
