"""Validated configuration records handed out by ``ABPlannerConfig``."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .level import Material


class _Settings(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class SearchConfig(_Settings):
    """Discretization, horizon, timeout and duplicate-detection grids."""
    dt: float = Field(default=0.05, gt=0)
    horizon: int = Field(default=1200, ge=1)
    timeout: float = Field(default=30.0, gt=0)
    position_grid: float = Field(default=0.1, gt=0)
    velocity_grid: float = Field(default=0.1, gt=0)
    angle_grid: float = Field(default=0.25, gt=0)
    macro_step: bool = True


class CascadeTimeouts(_Settings):
    single_shot: float = Field(default=30.0, gt=0)
    no_blocks: float = Field(default=30.0, gt=0)
    default_angle: float = Field(default=45.0, ge=0, le=80)


class MaterialProperties(_Settings):
    density: float = Field(gt=0)
    life_per_area: float = Field(gt=0)
    stability_coefficient: float = Field(gt=0)
    reflect_damper: float = Field(default=0.6, gt=0, le=1)
    penetration_damper: float = Field(default=0.5, gt=0, le=1)


class MaterialTable(_Settings):
    ice: MaterialProperties = MaterialProperties(density=1.0, life_per_area=50.0, stability_coefficient=5.0)
    wood: MaterialProperties = MaterialProperties(density=2.0, life_per_area=150.0, stability_coefficient=10.0)
    stone: MaterialProperties = MaterialProperties(density=4.0, life_per_area=400.0, stability_coefficient=20.0)

    @model_validator(mode="after")
    def _ice_weaker_than_stone(self) -> "MaterialTable":
        for attr in ("life_per_area", "stability_coefficient"):
            if not getattr(self.ice, attr) < getattr(self.wood, attr) < getattr(self.stone, attr):
                raise ValueError(f"{attr} must increase ice < wood < stone")
        return self

    def get(self, material: Material) -> MaterialProperties:
        return getattr(self, Material(material).value)


class DomainConstants(_Settings):
    """Constants of the Angry Birds model that levels do not carry."""
    materials: MaterialTable = MaterialTable()
    bird_radius: float = Field(default=0.5, gt=0)
    tnt_radius: float = Field(default=2.0, ge=0)
    fall_damage: float = Field(default=20.0, ge=0)
    ground_clearance: float = Field(default=1.0, gt=0)
    flight_tick_limit: int = Field(default=3000, ge=1)
    support_tolerance: float = Field(default=0.1, ge=0)


class ScoreWeights(_Settings):
    pig_points: int = Field(default=5000, ge=0)
    block_points: int = Field(default=500, ge=0)
    bird_points: int = Field(default=10000, ge=0)


class BenchmarkSettings(_Settings):
    level_budget: float = Field(default=60.0, gt=0)
    workers: int = Field(default=1, ge=1)
