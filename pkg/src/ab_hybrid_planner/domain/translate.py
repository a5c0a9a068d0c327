"""
Translate a Level into a grounded HybridProblem with the Angry Birds dynamics:
the release action, the aiming and flight processes, the full event
catalogue, and the single-shot / no-blocks simplifications.
"""

import logging
import math
from dataclasses import replace
from typing import Dict, List, Optional, Tuple

from ..errors import ModelError
from ..hybrid.expr import DEG_TO_RAD, Bool, Expr, Kind, Num, and_, cos_rad, eq, flag, ge, gt, le, lt, not_, num, or_, sin_deg, sqrt
from ..hybrid.model import ActionDef, Assign, EventDef, FluentDecl, FluentSchema, HybridProblem, ProcessDef, Rate, State, Unit
from ..models.level import Level
from ..models.settings import DomainConstants
from .materials import block_attributes, pig_supports, support_pairs
from .physics import circle_touches_rect, circles_overlap, elastic_bird_velocity_expr, penetration_x, penetration_y

logger = logging.getLogger(__name__)

DEFAULT_DT = 0.05
DEFAULT_HORIZON = 1200

BLOCK_EVENT_KINDS = frozenset({
    "tnt_contact",
    "tnt_destroy_pig",
    "tnt_destroy_block",
    "bird_block_stable_side",
    "bird_block_stable_top",
    "bird_block_unstable",
    "block_destroyed",
    "collapse",
    "pig_atop_collapse",
})


# =================== FLUENT NAMES ===================

def bird_fluent(attr: str, i: int) -> str:
    return f"{attr}_b{i}"


def pig_fluent(attr: str, j: int) -> str:
    return f"{attr}_p{j}"


def block_fluent(attr: str, k: int) -> str:
    return f"{attr}_k{k}"


def platform_fluent(attr: str, q: int) -> str:
    return f"{attr}_q{q}"


def pair_fluent(attr: str, i: int, k: int) -> str:
    return f"{attr}_b{i}_k{k}"


def twang_name(i: int) -> str:
    return f"pa-twang_b{i}"


def bird_of_action(name: str) -> int:
    prefix = "pa-twang_b"
    if not name.startswith(prefix) or not name[len(prefix):].isdigit():
        raise ModelError(f"not a release action: {name}")
    return int(name[len(prefix):])


_GLOBALS = (
    ("gravity", Kind.NUMERIC, Unit.DIMENSIONLESS),
    ("angle", Kind.NUMERIC, Unit.DEGREES),
    ("angle_rate", Kind.NUMERIC, Unit.DIMENSIONLESS),
    ("max_angle", Kind.NUMERIC, Unit.DEGREES),
    ("ground_damper", Kind.NUMERIC, Unit.DIMENSIONLESS),
    ("active_bird", Kind.NUMERIC, Unit.COUNT),
    ("angle_adjusted", Kind.BOOLEAN, Unit.DIMENSIONLESS),
    ("pigs_killed", Kind.NUMERIC, Unit.COUNT),
    ("birds_remaining", Kind.NUMERIC, Unit.COUNT),
)

_BIRD = (
    ("x_bird", Kind.NUMERIC, Unit.METERS),
    ("y_bird", Kind.NUMERIC, Unit.METERS),
    ("vx_bird", Kind.NUMERIC, Unit.VELOCITY),
    ("vy_bird", Kind.NUMERIC, Unit.VELOCITY),
    ("v_bird", Kind.NUMERIC, Unit.VELOCITY),
    ("m_bird", Kind.NUMERIC, Unit.KILOGRAMS),
    ("bounce_count", Kind.NUMERIC, Unit.COUNT),
    ("bird_id", Kind.NUMERIC, Unit.COUNT),
    ("bird_released", Kind.BOOLEAN, Unit.DIMENSIONLESS),
    ("bird_expired", Kind.BOOLEAN, Unit.DIMENSIONLESS),
    ("flight_time", Kind.NUMERIC, Unit.SECONDS),
    ("contact", Kind.NUMERIC, Unit.COUNT),
)

_PIG = (
    ("x_pig", Kind.NUMERIC, Unit.METERS),
    ("y_pig", Kind.NUMERIC, Unit.METERS),
    ("r_pig", Kind.NUMERIC, Unit.METERS),
    ("m_pig", Kind.NUMERIC, Unit.KILOGRAMS),
    ("pig_alive", Kind.BOOLEAN, Unit.DIMENSIONLESS),
)

_BLOCK = (
    ("x_block", Kind.NUMERIC, Unit.METERS),
    ("y_block", Kind.NUMERIC, Unit.METERS),
    ("w_block", Kind.NUMERIC, Unit.METERS),
    ("h_block", Kind.NUMERIC, Unit.METERS),
    ("m_block", Kind.NUMERIC, Unit.KILOGRAMS),
    ("life_block", Kind.NUMERIC, Unit.DIMENSIONLESS),
    ("stability_block", Kind.NUMERIC, Unit.DIMENSIONLESS),
    ("block_explosive", Kind.BOOLEAN, Unit.DIMENSIONLESS),
    ("block_dead", Kind.BOOLEAN, Unit.DIMENSIONLESS),
)

_PLATFORM = (
    ("x_platform", Kind.NUMERIC, Unit.METERS),
    ("y_platform", Kind.NUMERIC, Unit.METERS),
    ("w_platform", Kind.NUMERIC, Unit.METERS),
    ("h_platform", Kind.NUMERIC, Unit.METERS),
)


def _schema(level: Level) -> FluentSchema:
    decls: List[FluentDecl] = [FluentDecl(n, k, u) for n, k, u in _GLOBALS]
    for i in range(len(level.birds)):
        decls += [FluentDecl(bird_fluent(n, i), k, u, f"bird:b{i}") for n, k, u in _BIRD]
    for j in range(len(level.pigs)):
        decls += [FluentDecl(pig_fluent(n, j), k, u, f"pig:p{j}") for n, k, u in _PIG]
    for b in range(len(level.blocks)):
        decls += [FluentDecl(block_fluent(n, b), k, u, f"block:k{b}") for n, k, u in _BLOCK]
        # flight time of the last reflection of each bird off this block
        decls += [FluentDecl(pair_fluent("reflected_at", i, b), Kind.NUMERIC, Unit.SECONDS, f"block:k{b}")
                  for i in range(len(level.birds))]
    for q in range(len(level.platforms)):
        decls += [FluentDecl(platform_fluent(n, q), k, u, f"platform:q{q}") for n, k, u in _PLATFORM]
    return FluentSchema(tuple(decls))


def _initial_values(level: Level, constants: DomainConstants) -> Dict[str, object]:
    physics = level.physics
    values: Dict[str, object] = {
        "gravity": physics.gravity,
        "angle": 0.0,
        "angle_rate": physics.angle_rate,
        "max_angle": physics.max_angle,
        "ground_damper": physics.ground_damper,
        "active_bird": 0.0,
        "angle_adjusted": False,
        "pigs_killed": 0.0,
        "birds_remaining": float(len(level.birds)),
    }
    for i, bird in enumerate(level.birds):
        values.update({
            bird_fluent("x_bird", i): level.slingshot.x,
            bird_fluent("y_bird", i): level.slingshot.y,
            bird_fluent("vx_bird", i): 0.0,
            bird_fluent("vy_bird", i): 0.0,
            bird_fluent("v_bird", i): physics.launch_speed,
            bird_fluent("m_bird", i): bird.mass,
            bird_fluent("bounce_count", i): 0.0,
            bird_fluent("bird_id", i): float(bird.id),
            bird_fluent("bird_released", i): False,
            bird_fluent("bird_expired", i): False,
            bird_fluent("flight_time", i): 0.0,
            bird_fluent("contact", i): -1.0,
        })
    for j, pig in enumerate(level.pigs):
        values.update({
            pig_fluent("x_pig", j): pig.x,
            pig_fluent("y_pig", j): pig.y,
            pig_fluent("r_pig", j): pig.radius,
            pig_fluent("m_pig", j): pig.mass,
            pig_fluent("pig_alive", j): True,
        })
    for k, block in enumerate(level.blocks):
        attrs = block_attributes(block.width, block.height, block.material, block.bottom,
                                 constants.materials)
        values.update({
            block_fluent("x_block", k): block.x,
            block_fluent("y_block", k): block.y,
            block_fluent("w_block", k): block.width,
            block_fluent("h_block", k): block.height,
            block_fluent("m_block", k): attrs.mass,
            block_fluent("life_block", k): attrs.life,
            block_fluent("stability_block", k): attrs.stability,
            block_fluent("block_explosive", k): block.explosive,
            block_fluent("block_dead", k): False,
        })
        values.update({pair_fluent("reflected_at", i, k): -1.0 for i in range(len(level.birds))})
    for q, platform in enumerate(level.platforms):
        values.update({
            platform_fluent("x_platform", q): platform.x,
            platform_fluent("y_platform", q): platform.y,
            platform_fluent("w_platform", q): platform.width,
            platform_fluent("h_platform", q): platform.height,
        })
    return values


class _Grounder:
    """Builds the grounded actions, processes and events of one level."""

    def __init__(self, level: Level, constants: DomainConstants, dt: float):
        self.level = level
        self.constants = constants
        self.dt = dt
        self.events: List[EventDef] = []

    # ---- shorthands ----

    def b(self, attr: str, i: int) -> Expr:
        if attr in ("bird_released", "bird_expired"):
            return flag(bird_fluent(attr, i))
        return num(bird_fluent(attr, i))

    def p(self, attr: str, j: int) -> Expr:
        return flag(pig_fluent(attr, j)) if attr == "pig_alive" else num(pig_fluent(attr, j))

    def k(self, attr: str, m: int) -> Expr:
        if attr in ("block_explosive", "block_dead"):
            return flag(block_fluent(attr, m))
        return num(block_fluent(attr, m))

    def q(self, attr: str, n: int) -> Expr:
        return num(platform_fluent(attr, n))

    def in_flight(self, i: int) -> Tuple[Expr, ...]:
        """The bird is the active one, released and not yet expired."""
        return (
            eq(num("active_bird"), float(i)),
            self.b("bird_released", i),
            not_(self.b("bird_expired", i)),
        )

    def add(self, kind: str, name: str, precondition: Expr, effects: List[Assign]) -> None:
        self.events.append(EventDef(name, len(self.events), precondition, tuple(effects), kind))

    def kill(self, j: int) -> List[Assign]:
        return [
            Assign(pig_fluent("pig_alive", j), Bool(False)),
            Assign("pigs_killed", num("pigs_killed") + 1.0),
        ]

    def bounce(self, i: int) -> Assign:
        return Assign(bird_fluent("bounce_count", i), self.b("bounce_count", i) + 1.0)

    def touches_block(self, i: int, m: int) -> Expr:
        return circle_touches_rect(
            self.b("x_bird", i), self.b("y_bird", i), Num(self.constants.bird_radius),
            self.k("x_block", m), self.k("y_block", m), self.k("w_block", m), self.k("h_block", m),
        )

    # ---- actions and processes ----

    def actions(self) -> List[ActionDef]:
        result = []
        for i in range(len(self.level.birds)):
            v = self.b("v_bird", i)
            angle = num("angle")
            result.append(ActionDef(
                twang_name(i),
                and_(not_(self.b("bird_released", i)), not_(flag("angle_adjusted")),
                     eq(num("active_bird"), float(i))),
                (
                    Assign(bird_fluent("vy_bird", i), v * sin_deg(angle)),
                    Assign(bird_fluent("vx_bird", i), v * cos_rad(angle * DEG_TO_RAD)),
                    Assign(bird_fluent("bird_released", i), Bool(True)),
                    Assign("angle_adjusted", Bool(True)),
                    Assign("birds_remaining", num("birds_remaining") - 1.0),
                ),
            ))
        return result

    def processes(self) -> List[ProcessDef]:
        result = []
        for i in range(len(self.level.birds)):
            result.append(ProcessDef(
                f"increasing_angle_b{i}",
                and_(not_(flag("angle_adjusted")), eq(num("active_bird"), float(i)),
                     not_(self.b("bird_released", i)),
                     lt(num("angle"), num("max_angle")), ge(num("angle"), 0.0)),
                (Rate("angle", num("angle_rate")),),
            ))
            result.append(ProcessDef(
                f"flying_b{i}",
                and_(*self.in_flight(i), gt(self.b("y_bird", i), 0.0)),
                (
                    Rate(bird_fluent("x_bird", i), self.b("vx_bird", i)),
                    Rate(bird_fluent("y_bird", i), self.b("vy_bird", i)),
                    Rate(bird_fluent("vy_bird", i), -num("gravity")),
                    Rate(bird_fluent("flight_time", i), Num(1.0)),
                ),
            ))
        return result

    # ---- events, in firing priority order ----

    def build_events(self) -> List[EventDef]:
        level = self.level
        c = self.constants
        birds = range(len(level.birds))
        rb = Num(c.bird_radius)

        # (1) bird hits pig
        for i in birds:
            for j in range(len(level.pigs)):
                vx2, vy2 = elastic_bird_velocity_expr(
                    self.b("vx_bird", i), self.b("vy_bird", i),
                    self.b("x_bird", i), self.b("y_bird", i),
                    self.p("x_pig", j), self.p("y_pig", j),
                    self.b("m_bird", i), self.p("m_pig", j),
                )
                self.add(
                    "collision_pig", f"collision_pig_b{i}_p{j}",
                    and_(*self.in_flight(i), self.p("pig_alive", j),
                         circles_overlap(self.b("x_bird", i), self.b("y_bird", i), rb,
                                         self.p("x_pig", j), self.p("y_pig", j), self.p("r_pig", j))),
                    self.kill(j) + [
                        Assign(bird_fluent("vx_bird", i), vx2),
                        Assign(bird_fluent("vy_bird", i), vy2),
                        self.bounce(i),
                    ],
                )

        # (2) TNT: contact, then destruction of everything within the blast radius
        explosive = [m for m, block in enumerate(level.blocks) if block.explosive]
        for i in birds:
            for t in explosive:
                damper = c.materials.get(level.blocks[t].material).penetration_damper
                self.add(
                    "tnt_contact", f"tnt_contact_b{i}_k{t}",
                    and_(*self.in_flight(i), not_(self.k("block_dead", t)), self.touches_block(i, t)),
                    [
                        Assign(block_fluent("block_dead", t), Bool(True)),
                        Assign(bird_fluent("vx_bird", i), self.b("vx_bird", i) * damper),
                        Assign(bird_fluent("vy_bird", i), self.b("vy_bird", i) * damper),
                        self.bounce(i),
                    ],
                )
        for t in explosive:
            tnt = level.blocks[t]
            for j, pig in enumerate(level.pigs):
                if math.hypot(pig.x - tnt.x, pig.y - tnt.y) <= c.tnt_radius:
                    self.add(
                        "tnt_destroy_pig", f"tnt_destroy_pig_k{t}_p{j}",
                        and_(self.k("block_dead", t), self.p("pig_alive", j)),
                        self.kill(j),
                    )
            for m, other in enumerate(level.blocks):
                if m != t and math.hypot(other.x - tnt.x, other.y - tnt.y) <= c.tnt_radius:
                    self.add(
                        "tnt_destroy_block", f"tnt_destroy_block_k{t}_k{m}",
                        and_(self.k("block_dead", t), not_(self.k("block_dead", m))),
                        [Assign(block_fluent("block_dead", m), Bool(True))],
                    )

        # (3) bird hits block: reflect off a stable block, or penetrate and damage it
        for i in birds:
            vx, vy = self.b("vx_bird", i), self.b("vy_bird", i)
            xb, yb = self.b("x_bird", i), self.b("y_bird", i)
            momentum = self.b("m_bird", i) * sqrt(vx * vx + vy * vy)
            for m, block in enumerate(level.blocks):
                if block.explosive:
                    continue
                props = c.materials.get(block.material)
                stability = self.k("stability_block", m)
                live_contact = (*self.in_flight(i), not_(self.k("block_dead", m)), self.touches_block(i, m))
                pen_x = penetration_x(xb, rb, self.k("x_block", m), self.k("w_block", m))
                pen_y = penetration_y(yb, rb, self.k("y_block", m), self.k("h_block", m))
                # at most one reflection per bird and block per instant
                latch = pair_fluent("reflected_at", i, m)
                fresh = gt(self.b("flight_time", i), num(latch))
                mark = Assign(latch, self.b("flight_time", i))
                self.add(
                    "bird_block_stable_side", f"bird_block_stable_side_b{i}_k{m}",
                    and_(*live_contact, fresh, le(momentum, stability), le(pen_x, pen_y),
                         gt(vx * (self.k("x_block", m) - xb), 0.0)),
                    [Assign(bird_fluent("vx_bird", i), -vx * props.reflect_damper), self.bounce(i), mark],
                )
                self.add(
                    "bird_block_stable_top", f"bird_block_stable_top_b{i}_k{m}",
                    and_(*live_contact, fresh, le(momentum, stability), gt(pen_x, pen_y),
                         gt(vy * (self.k("y_block", m) - yb), 0.0)),
                    [Assign(bird_fluent("vy_bird", i), -vy * props.reflect_damper), self.bounce(i), mark],
                )
                self.add(
                    "bird_block_unstable", f"bird_block_unstable_b{i}_k{m}",
                    and_(*live_contact, gt(momentum, stability),
                         not_(eq(self.b("contact", i), float(m)))),
                    [
                        Assign(block_fluent("life_block", m), self.k("life_block", m) - momentum),
                        Assign(block_fluent("stability_block", m), Num(0.0)),
                        Assign(bird_fluent("vx_bird", i), vx * props.penetration_damper),
                        Assign(bird_fluent("vy_bird", i), vy * props.penetration_damper),
                        Assign(bird_fluent("contact", i), Num(float(m))),
                    ],
                )
        for m in range(len(level.blocks)):
            self.add(
                "block_destroyed", f"block_destroyed_k{m}",
                and_(not_(self.k("block_dead", m)), le(self.k("life_block", m), 0.0)),
                [Assign(block_fluent("block_dead", m), Bool(True))],
            )

        # (4) blocks resting on a destroyed or toppled block fall to the ground
        for a, b in support_pairs(level, c.support_tolerance):
            drop = self.k("y_block", b) - self.k("h_block", b) / 2.0
            self.add(
                "collapse", f"collapse_k{a}_k{b}",
                and_(or_(self.k("block_dead", a), le(self.k("stability_block", a), 0.0)),
                     not_(self.k("block_dead", b)), gt(self.k("stability_block", b), 0.0)),
                [
                    Assign(block_fluent("stability_block", b), Num(0.0)),
                    Assign(block_fluent("y_block", b), self.k("h_block", b) / 2.0),
                    Assign(block_fluent("life_block", b), self.k("life_block", b) - c.fall_damage * drop),
                ],
            )

        # (5) pigs on a collapsing structure die
        for a, j in pig_supports(level, c.support_tolerance):
            self.add(
                "pig_atop_collapse", f"pig_atop_collapse_k{a}_p{j}",
                and_(self.p("pig_alive", j),
                     or_(self.k("block_dead", a), le(self.k("stability_block", a), 0.0))),
                self.kill(j),
            )

        # (6) platforms stop and expire the bird
        for i in birds:
            for n in range(len(level.platforms)):
                self.add(
                    "collision_platform", f"collision_platform_b{i}_q{n}",
                    and_(*self.in_flight(i),
                         circle_touches_rect(self.b("x_bird", i), self.b("y_bird", i), rb,
                                             self.q("x_platform", n), self.q("y_platform", n),
                                             self.q("w_platform", n), self.q("h_platform", n))),
                    [
                        Assign(bird_fluent("vx_bird", i), Num(0.0)),
                        Assign(bird_fluent("vy_bird", i), Num(0.0)),
                        Assign(bird_fluent("bird_expired", i), Bool(True)),
                    ],
                )

        flight_limit = c.flight_tick_limit * self.dt
        for i in birds:
            # (7) ground bounce
            self.add(
                "collision_ground", f"collision_ground_b{i}",
                and_(*self.in_flight(i), le(self.b("y_bird", i), 0.0)),
                [
                    Assign(bird_fluent("y_bird", i), Num(c.ground_clearance)),
                    Assign(bird_fluent("vy_bird", i), (self.b("vy_bird", i) * -1.0) * num("ground_damper")),
                    self.bounce(i),
                ],
            )
        for i in birds:
            # (8) left the scene or flew too long
            x = self.b("x_bird", i)
            self.add(
                "out_of_scene", f"out_of_scene_b{i}",
                and_(*self.in_flight(i),
                     or_(gt(x, level.physics.x_bound), lt(x, 0.0),
                         ge(self.b("flight_time", i), flight_limit))),
                [Assign(bird_fluent("bird_expired", i), Bool(True))],
            )
        for i in birds:
            # (9) third bounce
            self.add(
                "three_bounce", f"three_bounce_b{i}",
                and_(*self.in_flight(i), ge(self.b("bounce_count", i), 3.0)),
                [Assign(bird_fluent("bird_expired", i), Bool(True))],
            )
        for i in birds:
            # (10) next bird into the slingshot
            effects = [
                Assign("active_bird", Num(float(i + 1))),
                Assign("angle", Num(0.0)),
                Assign("angle_adjusted", Bool(False)),
            ]
            if i + 1 < len(level.birds):
                effects += [
                    Assign(bird_fluent("x_bird", i + 1), Num(level.slingshot.x)),
                    Assign(bird_fluent("y_bird", i + 1), Num(level.slingshot.y)),
                ]
            self.add(
                "load_next_bird", f"load_next_bird_b{i}",
                and_(eq(num("active_bird"), float(i)), self.b("bird_expired", i),
                     gt(num("birds_remaining"), 0.0)),
                effects,
            )
        return self.events


def full_goal(level: Level) -> Expr:
    if not level.pigs:
        return Bool(True)
    return and_(*[not_(flag(pig_fluent("pig_alive", j))) for j in range(len(level.pigs))])


def translate(level: Level, constants: Optional[DomainConstants] = None,
              dt: float = DEFAULT_DT, horizon: int = DEFAULT_HORIZON, name: str = "") -> HybridProblem:
    """Ground ``level`` into the full problem (goal: every pig dead)."""
    if not level.birds:
        raise ModelError("level has no birds")
    constants = constants or DomainConstants()
    schema = _schema(level)
    initial = State.initial(schema, _initial_values(level, constants))
    grounder = _Grounder(level, constants, dt)
    problem = HybridProblem(
        schema=schema,
        initial=initial,
        actions=tuple(grounder.actions()),
        events=tuple(grounder.build_events()),
        processes=tuple(grounder.processes()),
        goal=full_goal(level),
        dt=dt,
        horizon=horizon,
        name=name,
    )
    logger.debug(
        f"Translated level {name or '<unnamed>'}: {len(schema)} fluents, "
        f"{len(problem.actions)} actions, {len(problem.events)} events, {len(problem.processes)} processes"
    )
    return problem


def single_shot(problem: HybridProblem) -> HybridProblem:
    """Only the active bird may be released; goal is killing at least one pig."""
    active = int(problem.initial["active_bird"])
    keep = tuple(a for a in problem.actions if a.name == twang_name(active))
    return replace(problem, actions=keep, goal=ge(num("pigs_killed"), 1.0), single_shot=True)


def strip_blocks(problem: HybridProblem) -> HybridProblem:
    """Drop block fluents and every block-related event; pigs and platforms remain."""
    keep_decls = tuple(d for d in problem.schema if not d.owner.startswith("block:"))
    keep_events = tuple(e for e in problem.events if e.kind not in BLOCK_EVENT_KINDS)
    if len(keep_decls) == len(problem.schema) and len(keep_events) == len(problem.events):
        return problem
    schema = FluentSchema(keep_decls)
    old = problem.initial
    initial = State(schema, tuple(old[d.name] for d in keep_decls), old.tick, old.time)
    return replace(problem, schema=schema, initial=initial, events=keep_events, blocks_stripped=True)
