"""Line-oriented debug dump of ticks."""

from typing import Iterable, List

from .expr import Value
from .model import TickRecord


def format_value(value: Value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(value)


def format_time(time: float) -> str:
    return f"{time:.6g}"


def format_tick(record: TickRecord) -> List[str]:
    """``t=<time> decision=<..> fired=[..]`` followed by one line per changed fluent."""
    lines = [
        f"t={format_time(record.after.time)} decision={record.decision} "
        f"fired=[{','.join(record.fired)}]"
    ]
    for name, value in record.changes():
        lines.append(f"  {name}={format_value(value)}")
    return lines


def dump_trace(records: Iterable[TickRecord]) -> str:
    lines: List[str] = []
    for record in records:
        lines.extend(format_tick(record))
    return "\n".join(lines) + "\n" if lines else ""
