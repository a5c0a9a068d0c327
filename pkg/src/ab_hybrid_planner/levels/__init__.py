"""Level files and the random level generator."""

from .generator import GeneratorParams, generate_level, is_exposed, make_params, pig_is_structured, sample_params
from .level_io import load_level, parse_level, save_level, serialize_level

__all__ = [
    "GeneratorParams", "generate_level", "is_exposed", "make_params", "pig_is_structured", "sample_params",
    "load_level", "parse_level", "save_level", "serialize_level",
]
