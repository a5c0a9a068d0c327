"""Block derived attributes and the static support relations of a level."""

import logging
from typing import List, NamedTuple, Tuple

from ..errors import ModelError
from ..models.level import Block, Level, Material, Pig
from ..models.settings import MaterialTable

logger = logging.getLogger(__name__)


class BlockAttributes(NamedTuple):
    mass: float
    life: float
    stability: float


def block_attributes(width: float, height: float, material: Material,
                     base_height: float, table: MaterialTable) -> BlockAttributes:
    """Mass, life and stability of a block; taller placement means lower stability."""
    if not width > 0 or not height > 0:
        raise ModelError(f"block dimensions must be positive, got {width} x {height}")
    try:
        props = table.get(material)
    except ValueError:
        raise ModelError(f"unknown material: {material!r}") from None
    area = width * height
    mass = props.density * area
    life = props.life_per_area * area
    stability = props.stability_coefficient * mass * width / (1.0 + max(base_height, 0.0))
    return BlockAttributes(mass, life, stability)


def _x_overlap(a_left: float, a_right: float, b_left: float, b_right: float) -> bool:
    return a_left < b_right and b_left < a_right


def rests_on(upper: Block, lower: Block, tolerance: float) -> bool:
    return (abs(upper.bottom - lower.top) <= tolerance
            and _x_overlap(upper.left, upper.right, lower.left, lower.right))


def pig_rests_on(pig: Pig, lower: Block, tolerance: float) -> bool:
    return (abs((pig.y - pig.radius) - lower.top) <= tolerance
            and _x_overlap(pig.x - pig.radius, pig.x + pig.radius, lower.left, lower.right))


def support_pairs(level: Level, tolerance: float) -> List[Tuple[int, int]]:
    """(supporter, supported) block index pairs."""
    pairs = []
    for j, upper in enumerate(level.blocks):
        for i, lower in enumerate(level.blocks):
            if i != j and rests_on(upper, lower, tolerance):
                pairs.append((i, j))
    return pairs


def pig_supports(level: Level, tolerance: float) -> List[Tuple[int, int]]:
    """(supporting block, pig) index pairs."""
    return [
        (i, p)
        for p, pig in enumerate(level.pigs)
        for i, block in enumerate(level.blocks)
        if pig_rests_on(pig, block, tolerance)
    ]
