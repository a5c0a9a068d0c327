"""JSON level files, validated through the pydantic ``Level`` model."""

import json
import logging
from pathlib import Path
from typing import Any, Mapping, Union

from pydantic import ValidationError

from ..errors import LevelFormatError
from ..models.level import Level

logger = logging.getLogger(__name__)

Document = Union[str, bytes, Mapping[str, Any]]


def _error_path(loc) -> str:
    """``('blocks', 0, 'material')`` -> ``blocks[0].material``."""
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path


def parse_level(document: Document, source: str = "") -> Level:
    """Validate a level document; errors name the first offending path."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise LevelFormatError(f"invalid JSON: {e}", source) from None
    if not isinstance(document, Mapping):
        raise LevelFormatError("level document must be a JSON object", source)
    try:
        return Level.model_validate(document)
    except ValidationError as e:
        first = e.errors()[0]
        path = _error_path(first["loc"])
        logger.debug(f"Level validation failed at {path or '<root>'}: {first['msg']}")
        raise LevelFormatError(first["msg"], path or source) from None


def serialize_level(level: Level) -> str:
    return json.dumps(level.model_dump(mode="json"), indent=2) + "\n"


def load_level(path: Union[str, Path]) -> Level:
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise LevelFormatError("file not found", str(path)) from None
    return parse_level(text, source=str(path))


def save_level(level: Level, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_level(level))
    logger.debug(f"Wrote level to {path}")
    return path
