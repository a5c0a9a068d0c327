"""The Angry Birds model: materials, collision physics and level translation."""

from .materials import BlockAttributes, block_attributes, pig_supports, support_pairs
from .physics import circle_touches_rect, circles_overlap, elastic_bird_velocity, elastic_bird_velocity_expr
from .translate import (
    BLOCK_EVENT_KINDS,
    bird_fluent,
    bird_of_action,
    block_fluent,
    pair_fluent,
    pig_fluent,
    platform_fluent,
    single_shot,
    strip_blocks,
    translate,
    twang_name,
)

__all__ = [
    "BlockAttributes", "block_attributes", "pig_supports", "support_pairs",
    "circle_touches_rect", "circles_overlap", "elastic_bird_velocity", "elastic_bird_velocity_expr",
    "BLOCK_EVENT_KINDS", "bird_fluent", "bird_of_action", "block_fluent", "pair_fluent",
    "pig_fluent", "platform_fluent", "single_shot", "strip_blocks", "translate", "twang_name",
]
