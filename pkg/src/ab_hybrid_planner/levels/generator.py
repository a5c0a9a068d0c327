"""
Seeded random level generator.

Pigs sit on evenly spaced slots; with ``structure_prob`` a pig gets a
structure (a tower it sits on, or two walls beside it) built from the
block budget. Platforms float well above the structures.
"""

import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..errors import GenerationError
from ..models.level import Bird, Block, Level, Material, Pig, Platform, Point

logger = logging.getLogger(__name__)

SLINGSHOT = Point(x=0.0, y=5.0)
PIG_SLOTS = tuple(80.0 + 30.0 * i for i in range(10))
MAX_STACK = 4
BLOCK_HEIGHT = 2.0
TOWER_WIDTH = 4.0
WALL_WIDTH = 1.0
ADJACENCY = 2.0


class GeneratorParams(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    n_pigs: int = Field(default=1, ge=1, le=len(PIG_SLOTS))
    n_blocks: int = Field(default=0, ge=0)
    n_platforms: int = Field(default=0, ge=0, le=5)
    n_birds: int = Field(default=3, ge=1, le=10)
    structure_prob: float = Field(default=0.5, ge=0, le=1)
    tnt_prob: float = Field(default=0.0, ge=0, le=1)


def make_params(**values) -> GeneratorParams:
    try:
        return GeneratorParams(**values)
    except ValidationError as e:
        first = e.errors()[0]
        raise GenerationError(f"{'.'.join(map(str, first['loc']))}: {first['msg']}") from None


def _r(value: float) -> float:
    return round(float(value), 1)


def _tower(x: float, blocks: List[Material], explosive: List[bool], pig_radius: float):
    parts = [
        Block(x=x, y=BLOCK_HEIGHT * n + BLOCK_HEIGHT / 2.0, width=TOWER_WIDTH, height=BLOCK_HEIGHT,
              material=m, explosive=e)
        for n, (m, e) in enumerate(zip(blocks, explosive))
    ]
    return parts, BLOCK_HEIGHT * len(blocks) + pig_radius


def _walls(x: float, blocks: List[Material], explosive: List[bool], pig_radius: float):
    offset = pig_radius + 0.5 + WALL_WIDTH / 2.0
    left = (len(blocks) + 1) // 2
    parts = []
    for n, (m, e) in enumerate(zip(blocks, explosive)):
        side, level = (-1.0, n) if n < left else (1.0, n - left)
        parts.append(Block(x=_r(x + side * offset), y=BLOCK_HEIGHT * level + BLOCK_HEIGHT / 2.0,
                           width=WALL_WIDTH, height=BLOCK_HEIGHT, material=m, explosive=e))
    return parts, pig_radius


def generate_level(seed: int, params: Optional[GeneratorParams] = None) -> Level:
    """Deterministic function of (seed, params)."""
    params = params or GeneratorParams()
    if params.n_blocks > params.n_pigs * MAX_STACK:
        raise GenerationError(
            f"{params.n_blocks} blocks do not fit on {params.n_pigs} structures "
            f"of at most {MAX_STACK} blocks"
        )
    if params.structure_prob == 1.0 and 0 < params.n_blocks < params.n_pigs:
        raise GenerationError(
            f"{params.n_blocks} blocks cannot give each of {params.n_pigs} pigs a structure"
        )
    rng = np.random.default_rng(seed)
    materials = list(Material)

    slots = sorted(rng.choice(len(PIG_SLOTS), size=params.n_pigs, replace=False).tolist())
    radii = [_r(rng.uniform(0.8, 1.5)) for _ in slots]
    structured = [n for n in range(params.n_pigs) if rng.random() < params.structure_prob]
    # every structured pig gets at least one block
    structured = structured[:params.n_blocks]

    # Round-robin the block budget over structured pigs.
    share = {n: 0 for n in structured}
    if structured:
        budget = min(params.n_blocks, len(structured) * MAX_STACK)
        for b in range(budget):
            share[structured[b % len(structured)]] += 1

    pigs: List[Pig] = []
    blocks: List[Block] = []
    for n, slot in enumerate(slots):
        x = PIG_SLOTS[slot]
        radius = radii[n]
        count = share.get(n, 0)
        if count == 0:
            pigs.append(Pig(x=x, y=radius, radius=radius))
            continue
        kinds = [materials[i] for i in rng.integers(0, len(materials), size=count)]
        explosive = [bool(rng.random() < params.tnt_prob) for _ in range(count)]
        build = _tower if count < 2 or rng.random() < 0.5 else _walls
        parts, pig_y = build(x, kinds, explosive, radius)
        blocks.extend(parts)
        pigs.append(Pig(x=x, y=_r(pig_y), radius=radius))

    top = max([b.top for b in blocks] + [p.y + p.radius for p in pigs])
    platforms = []
    for _ in range(params.n_platforms):
        height = _r(rng.uniform(1.0, 3.0))
        platforms.append(Platform(
            x=_r(rng.uniform(40.0, 300.0)),
            y=_r(top + 10.0 + rng.uniform(0.0, 40.0) + height / 2.0),
            width=_r(rng.uniform(4.0, 12.0)),
            height=height,
        ))

    level = Level(
        slingshot=SLINGSHOT,
        birds=tuple(Bird(id=i) for i in range(params.n_birds)),
        pigs=tuple(pigs),
        blocks=tuple(blocks),
        platforms=tuple(platforms),
    )
    logger.debug(
        f"Generated level seed={seed}: {len(pigs)} pigs ({len(structured)} structured), "
        f"{len(blocks)} blocks, {len(platforms)} platforms"
    )
    return level


def sample_params(seed: int) -> GeneratorParams:
    """Per-seed parameters for generated benchmark batches."""
    rng = np.random.default_rng([seed, 1])
    n_pigs = int(rng.integers(1, 4))
    n_blocks = int(rng.integers(0, 2 * n_pigs + 1))
    n_platforms = int(rng.integers(0, 3))
    n_birds = int(rng.integers(1, 4))
    structure_prob = float(rng.choice([0.0, 0.5, 1.0]))
    if structure_prob == 1.0 and n_blocks:
        n_blocks = max(n_blocks, n_pigs)
    return GeneratorParams(
        n_pigs=n_pigs,
        n_blocks=n_blocks,
        n_platforms=n_platforms,
        n_birds=n_birds,
        structure_prob=structure_prob,
        tnt_prob=0.1,
    )


def pig_is_structured(level: Level, j: int) -> bool:
    """A block lies under the pig or within ADJACENCY of its sides."""
    pig = level.pigs[j]
    reach = pig.radius + ADJACENCY
    return any(
        b.left - reach <= pig.x <= b.right + reach and b.bottom <= pig.y + pig.radius
        for b in level.blocks
    )


def is_exposed(level: Level) -> bool:
    """Every pig stands free of blocks (platforms are not considered)."""
    return all(not pig_is_structured(level, j) for j in range(len(level.pigs)))
