"""Line-oriented plan files: ``stage=<tag> dt=<dt>`` header, then ``tick=<k> action=<name>``."""

import logging
from pathlib import Path
from typing import Dict, Union

from pydantic import ValidationError

from ..errors import PlanFormatError
from ..models.results import Plan, PlanStep, Stage

logger = logging.getLogger(__name__)


def _fields(line: str, lineno: int) -> Dict[str, str]:
    fields = {}
    for token in line.split():
        key, sep, value = token.partition("=")
        if not sep or not value:
            raise PlanFormatError(f"line {lineno}: expected key=value, got {token!r}")
        fields[key] = value
    return fields


def format_plan(plan: Plan) -> str:
    lines = [f"stage={plan.stage.value} dt={plan.dt!r}"]
    lines += [f"tick={step.tick} action={step.action}" for step in plan.steps]
    return "\n".join(lines) + "\n"


def parse_plan(text: str) -> Plan:
    lines = [(n, line.strip()) for n, line in enumerate(text.splitlines(), start=1)]
    lines = [(n, line) for n, line in lines if line and not line.startswith("#")]
    if not lines:
        raise PlanFormatError("empty plan file")

    lineno, header = lines[0]
    fields = _fields(header, lineno)
    if set(fields) != {"stage", "dt"}:
        raise PlanFormatError(f"line {lineno}: header must be 'stage=<tag> dt=<dt>'")
    try:
        stage = Stage(fields["stage"])
        dt = float(fields["dt"])
    except ValueError as e:
        raise PlanFormatError(f"line {lineno}: {e}") from None

    steps = []
    for lineno, line in lines[1:]:
        fields = _fields(line, lineno)
        if set(fields) != {"tick", "action"}:
            raise PlanFormatError(f"line {lineno}: expected 'tick=<k> action=<name>'")
        try:
            steps.append(PlanStep(tick=int(fields["tick"]), action=fields["action"]))
        except (ValueError, ValidationError) as e:
            raise PlanFormatError(f"line {lineno}: bad tick {fields['tick']!r}") from e

    try:
        return Plan(steps=tuple(steps), stage=stage, dt=dt)
    except ValidationError as e:
        raise PlanFormatError(e.errors()[0]["msg"]) from None


def save_plan(plan: Plan, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(format_plan(plan))
    logger.debug(f"Wrote plan with {len(plan.steps)} decisions to {path}")
    return path


def load_plan(path: Union[str, Path]) -> Plan:
    path = Path(path)
    return parse_plan(path.read_text())
