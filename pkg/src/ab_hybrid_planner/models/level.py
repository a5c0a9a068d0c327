"""Declarative level description: birds, pigs, blocks, platforms, slingshot, physics."""

from enum import Enum
from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Material(str, Enum):
    ICE = "ice"
    WOOD = "wood"
    STONE = "stone"


class _LevelPart(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class Point(_LevelPart):
    x: float
    y: float


class Bird(_LevelPart):
    """A bird; ids give the launch order."""
    id: int = Field(ge=0)
    type: Literal["red"] = "red"
    mass: float = Field(default=1.0, gt=0)


class Pig(_LevelPart):
    x: float
    y: float = Field(ge=0)
    radius: float = Field(default=0.5, ge=0)
    mass: float = Field(default=1.0, ge=0)


class Block(_LevelPart):
    """Axis-aligned block; (x, y) is the centre."""
    x: float
    y: float = Field(ge=0)
    width: float = Field(gt=0)
    height: float = Field(gt=0)
    material: Material
    explosive: bool = False

    @property
    def bottom(self) -> float:
        return self.y - self.height / 2.0

    @property
    def top(self) -> float:
        return self.y + self.height / 2.0

    @property
    def left(self) -> float:
        return self.x - self.width / 2.0

    @property
    def right(self) -> float:
        return self.x + self.width / 2.0


class Platform(_LevelPart):
    """Indestructible static rectangle; (x, y) is the centre."""
    x: float
    y: float = Field(ge=0)
    width: float = Field(gt=0)
    height: float = Field(gt=0)


class Physics(_LevelPart):
    gravity: float = Field(default=9.8, gt=0)
    launch_speed: float = Field(default=70.0, gt=0)
    angle_rate: float = Field(default=10.0, gt=0)
    # approx_cos is only accurate for launch angles well below 90 degrees.
    max_angle: float = Field(default=80.0, gt=0, le=80)
    ground_damper: float = Field(default=0.4, gt=0, le=1)
    x_bound: float = Field(default=600.0, gt=0)


class Level(_LevelPart):
    slingshot: Point
    birds: Tuple[Bird, ...] = Field(min_length=1)
    pigs: Tuple[Pig, ...] = ()
    blocks: Tuple[Block, ...] = ()
    platforms: Tuple[Platform, ...] = ()
    physics: Physics = Physics()

    @field_validator("slingshot")
    @classmethod
    def _slingshot_above_ground(cls, value: Point) -> Point:
        if value.y <= 0:
            raise ValueError("slingshot must be above the ground (y > 0)")
        return value

    @model_validator(mode="after")
    def _bird_ids_in_launch_order(self) -> "Level":
        ids = [b.id for b in self.birds]
        if ids != list(range(len(ids))):
            raise ValueError(f"bird ids must be 0..n-1 in launch order, got {ids}")
        return self
