"""
Analytic ballistic oracle for levels without blocks.

A straight-line rerun of the first bird's flight for every release tick,
written with plain floats and no search. The arithmetic is done in exactly
the order the translated model does it, so positions agree bit for bit.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Set, Tuple

from ..errors import PreconditionError
from ..hybrid.expr import DEG_TO_RAD, approx_cos, approx_sin, checked_sqrt
from ..models.level import Level
from ..models.settings import DomainConstants, SearchConfig

logger = logging.getLogger(__name__)


@dataclass
class OracleReport:
    """Release ticks that hit, and how close the best non-hitting release came."""
    hits: Set[int] = field(default_factory=set)
    closest_miss: float = math.inf

    @property
    def hittable(self) -> bool:
        return bool(self.hits)


@dataclass
class _Bird:
    x: float
    y: float
    vx: float = 0.0
    vy: float = 0.0
    bounce: float = 0.0
    flight_time: float = 0.0
    expired: bool = False


def _overlaps(bx: float, by: float, rb: float, px: float, py: float, rp: float) -> bool:
    dx = bx - px
    dy = by - py
    reach = rb + rp
    return dx * dx + dy * dy <= reach * reach


def _touches_rect(px: float, py: float, r: float, cx: float, cy: float, w: float, h: float) -> bool:
    dx = px - cx
    dy = py - cy
    ax = checked_sqrt(dx * dx)
    ay = checked_sqrt(dy * dy)
    hw = w / 2.0
    hh = h / 2.0
    return ((ax <= hw + r and ay <= hh)
            or (ax <= hw and ay <= hh + r)
            or (ax - hw) * (ax - hw) + (ay - hh) * (ay - hh) <= r * r)


class _Flight:
    def __init__(self, level: Level, constants: DomainConstants, dt: float, horizon: int):
        if level.blocks:
            raise PreconditionError("the ballistic oracle only handles levels without blocks")
        self.level = level
        self.c = constants
        self.dt = dt
        self.horizon = horizon
        self.flight_limit = constants.flight_tick_limit * dt

    def angle_at(self, release_tick: int) -> float:
        physics = self.level.physics
        angle = 0.0
        for _ in range(release_tick):
            if angle < physics.max_angle and angle >= 0.0:
                angle = angle + physics.angle_rate * self.dt
        return angle

    def _events(self, bird: _Bird, alive: List[bool], hit: List[int]) -> None:
        """Fire enabled events in model order until none remains."""
        c = self.c
        rb = c.bird_radius
        physics = self.level.physics
        while not bird.expired:
            fired = False
            for j, pig in enumerate(self.level.pigs):
                if alive[j] and _overlaps(bird.x, bird.y, rb, pig.x, pig.y, pig.radius):
                    dx = bird.x - pig.x
                    dy = bird.y - pig.y
                    k = (2.0 * pig.mass / (self.level.birds[0].mass + pig.mass)) * (
                        (bird.vx * dx + bird.vy * dy) / (dx * dx + dy * dy))
                    bird.vx, bird.vy = bird.vx - k * dx, bird.vy - k * dy
                    bird.bounce = bird.bounce + 1.0
                    alive[j] = False
                    hit.append(j)
                    fired = True
                    break
            if fired:
                continue
            for platform in self.level.platforms:
                if _touches_rect(bird.x, bird.y, rb, platform.x, platform.y, platform.width, platform.height):
                    bird.vx, bird.vy = 0.0, 0.0
                    bird.expired = True
                    break
            if bird.expired:
                break
            if bird.y <= 0.0:
                bird.y = c.ground_clearance
                bird.vy = (bird.vy * -1.0) * physics.ground_damper
                bird.bounce = bird.bounce + 1.0
                continue
            if bird.x > physics.x_bound or bird.x < 0.0 or bird.flight_time >= self.flight_limit:
                bird.expired = True
                break
            if bird.bounce >= 3.0:
                bird.expired = True
            break

    def fly(self, release_tick: int, target: Optional[int] = None
            ) -> Tuple[bool, float, List[Tuple[int, float, float]]]:
        """
        Release at ``release_tick`` and follow the bird until it expires or the
        horizon ends. Returns (hit, closest gap to a target pig, path).
        """
        physics = self.level.physics
        angle = self.angle_at(release_tick)
        v = physics.launch_speed
        bird = _Bird(self.level.slingshot.x, self.level.slingshot.y)
        bird.vy = v * approx_sin(angle)
        bird.vx = v * approx_cos(angle * DEG_TO_RAD)
        alive = [True] * len(self.level.pigs)
        targets = range(len(self.level.pigs)) if target is None else [target]
        hit: List[int] = []
        gap = math.inf
        path = [(release_tick, bird.x, bird.y)]

        def record_gap():
            nonlocal gap
            for j in targets:
                pig = self.level.pigs[j]
                d = math.hypot(bird.x - pig.x, bird.y - pig.y) - (self.c.bird_radius + pig.radius)
                gap = min(gap, max(d, 0.0))

        tick = release_tick
        record_gap()
        self._events(bird, alive, hit)
        while not bird.expired and tick < self.horizon:
            if any(j in targets for j in hit):
                break
            if bird.y > 0.0:
                bird.x, bird.y, bird.vy, bird.flight_time = (
                    bird.x + bird.vx * self.dt,
                    bird.y + bird.vy * self.dt,
                    bird.vy + (-physics.gravity) * self.dt,
                    bird.flight_time + 1.0 * self.dt,
                )
            tick += 1
            record_gap()
            self._events(bird, alive, hit)
            path.append((tick, bird.x, bird.y))
        return any(j in targets for j in hit), gap, path


def oracle_report(level: Level, pig_index: Optional[int] = None,
                  config: Optional[SearchConfig] = None,
                  constants: Optional[DomainConstants] = None) -> OracleReport:
    """Hitting release ticks for one pig (or any pig when ``pig_index`` is None)."""
    config = config or SearchConfig()
    flight = _Flight(level, constants or DomainConstants(), config.dt, config.horizon)
    if pig_index is not None and not 0 <= pig_index < len(level.pigs):
        raise PreconditionError(f"no pig with index {pig_index}")
    report = OracleReport()
    if not level.pigs:
        return report
    for k in range(config.horizon):
        hit, gap, _ = flight.fly(k, pig_index)
        if hit:
            report.hits.add(k)
        else:
            report.closest_miss = min(report.closest_miss, gap)
    logger.debug(f"Oracle: {len(report.hits)} hitting release ticks, closest miss {report.closest_miss:.3f}")
    return report


def oracle_hit(level: Level, pig_index: Optional[int] = None,
               config: Optional[SearchConfig] = None,
               constants: Optional[DomainConstants] = None) -> Set[int]:
    return oracle_report(level, pig_index, config, constants).hits


def flight_path(level: Level, release_tick: int, config: Optional[SearchConfig] = None,
                constants: Optional[DomainConstants] = None) -> List[Tuple[int, float, float]]:
    """(tick, x, y) of the first bird after each tick, starting at the release tick."""
    config = config or SearchConfig()
    flight = _Flight(level, constants or DomainConstants(), config.dt, config.horizon)
    return flight.fly(release_tick)[2]

