"""
Hybrid-automaton IR and its uniform-discretization step semantics.

A tick applies, in order: the decided action (if any), events to quiescence,
one explicit-Euler flow step of every active process, events to quiescence.
All operations are pure; states are immutable values.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..errors import CascadeDivergenceError, ConfigurationError, InapplicableActionError, ModelError
from .expr import Compiled, Expr, Kind, Value

logger = logging.getLogger(__name__)

CASCADE_CAP = 1000

WAIT = "wait"


class Unit(str, Enum):
    """Unit annotation; drives the quantization grid used for a fluent."""
    METERS = "meters"
    VELOCITY = "m/s"
    DEGREES = "degrees"
    COUNT = "count"
    DIMENSIONLESS = "dimensionless"
    SECONDS = "seconds"
    KILOGRAMS = "kg"


@dataclass(frozen=True)
class FluentDecl:
    name: str
    kind: Kind = Kind.NUMERIC
    unit: Unit = Unit.DIMENSIONLESS
    owner: str = "global"


@dataclass(frozen=True)
class FluentSchema:
    """Ordered fluent declarations; order is fixed for evaluation and hashing."""
    decls: Tuple[FluentDecl, ...]

    def __post_init__(self):
        object.__setattr__(self, "decls", tuple(self.decls))
        index: Dict[str, int] = {}
        for i, decl in enumerate(self.decls):
            if decl.name in index:
                raise ModelError(f"duplicate fluent name: {decl.name}")
            index[decl.name] = i
        object.__setattr__(self, "_index", index)

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ModelError(f"unknown fluent: {name}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.decls)

    def __iter__(self):
        return iter(self.decls)

    @property
    def names(self) -> List[str]:
        return [d.name for d in self.decls]

    def decl(self, name: str) -> FluentDecl:
        return self.decls[self.index_of(name)]


@dataclass(frozen=True)
class State:
    """Dense assignment of one value per declared fluent, plus the clock."""
    schema: FluentSchema
    values: Tuple[Value, ...]
    tick: int = 0
    time: float = 0.0

    def __post_init__(self):
        if len(self.values) != len(self.schema):
            raise ModelError(
                f"state has {len(self.values)} values for {len(self.schema)} declared fluents"
            )
        if self.time < 0:
            raise ModelError("state time must be non-negative")

    def __getitem__(self, name: str) -> Value:
        return self.values[self.schema.index_of(name)]

    def as_dict(self) -> Dict[str, Value]:
        return dict(zip(self.schema.names, self.values))

    def with_values(self, updates: Dict[str, Value]) -> "State":
        """Copy with the named fluents overwritten (used to set up scenarios)."""
        values = list(self.values)
        for name, value in updates.items():
            decl = self.schema.decl(name)
            values[self.schema.index_of(name)] = bool(value) if decl.kind is Kind.BOOLEAN else float(value)
        return State(self.schema, tuple(values), self.tick, self.time)

    @classmethod
    def initial(cls, schema: FluentSchema, values: Dict[str, Value]) -> "State":
        missing = [d.name for d in schema if d.name not in values]
        if missing:
            raise ModelError(f"initial state missing values for: {', '.join(missing[:5])}")
        extra = set(values) - set(schema.names)
        if extra:
            raise ModelError(f"initial state sets undeclared fluents: {', '.join(sorted(extra)[:5])}")
        ordered = tuple(
            bool(values[d.name]) if d.kind is Kind.BOOLEAN else float(values[d.name])
            for d in schema
        )
        return cls(schema, ordered)


@dataclass(frozen=True)
class Assign:
    """``fluent <- value``, evaluated against the pre-update state."""
    fluent: str
    value: Expr


@dataclass(frozen=True)
class Rate:
    """``d(fluent)/dt = rate`` while the owning process is active."""
    fluent: str
    rate: Expr


def _cached(obj: Any, schema: FluentSchema, build: Callable[[], Any]) -> Any:
    cache = obj.__dict__.setdefault("_compiled", {})
    hit = cache.get(id(schema))
    if hit is not None and hit[0] is schema:
        return hit[1]
    compiled = build()
    cache[id(schema)] = (schema, compiled)
    return compiled


def _compile_effects(effects: Sequence[Assign], schema: FluentSchema) -> Tuple[Tuple[int, Compiled], ...]:
    return tuple((schema.index_of(a.fluent), a.value.compile(schema)) for a in effects)


@dataclass(frozen=True)
class ActionDef:
    name: str
    precondition: Expr
    effects: Tuple[Assign, ...]

    def __post_init__(self):
        object.__setattr__(self, "effects", tuple(self.effects))
        if self.precondition.kind is not Kind.BOOLEAN:
            raise ModelError(f"action {self.name}: precondition must be boolean")

    def compiled(self, schema: FluentSchema):
        return _cached(self, schema, lambda: (
            self.name, self.precondition.compile(schema), _compile_effects(self.effects, schema)))


@dataclass(frozen=True)
class EventDef:
    name: str
    index: int
    precondition: Expr
    effects: Tuple[Assign, ...]
    kind: str = ""

    def __post_init__(self):
        object.__setattr__(self, "effects", tuple(self.effects))
        if not self.kind:
            object.__setattr__(self, "kind", self.name)
        if self.precondition.kind is not Kind.BOOLEAN:
            raise ModelError(f"event {self.name}: precondition must be boolean")
        written = {a.fluent for a in self.effects}
        if not written & self.precondition.fluents():
            raise ModelError(
                f"event {self.name} cannot falsify its own precondition: "
                f"it writes {sorted(written)} but reads {sorted(self.precondition.fluents())}"
            )

    def compiled(self, schema: FluentSchema):
        return _cached(self, schema, lambda: (
            self.name, self.precondition.compile(schema), _compile_effects(self.effects, schema)))


@dataclass(frozen=True)
class ProcessDef:
    name: str
    condition: Expr
    rates: Tuple[Rate, ...]

    def __post_init__(self):
        object.__setattr__(self, "rates", tuple(self.rates))
        if self.condition.kind is not Kind.BOOLEAN:
            raise ModelError(f"process {self.name}: condition must be boolean")

    def compiled(self, schema: FluentSchema):
        return _cached(self, schema, lambda: (
            self.name,
            self.condition.compile(schema),
            tuple((schema.index_of(r.fluent), r.rate.compile(schema)) for r in self.rates),
        ))


@dataclass(frozen=True)
class HybridProblem:
    """Grounded model: schema, initial state, actions, ordered events, processes, goal."""
    schema: FluentSchema
    initial: State
    actions: Tuple[ActionDef, ...]
    events: Tuple[EventDef, ...]
    processes: Tuple[ProcessDef, ...]
    goal: Expr
    dt: float
    horizon: int
    name: str = ""
    single_shot: bool = False
    blocks_stripped: bool = False

    def __post_init__(self):
        for attr in ("actions", "events", "processes"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        if not self.dt > 0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}")
        if self.horizon < 1:
            raise ConfigurationError(f"horizon must be at least 1 tick, got {self.horizon}")
        if self.initial.schema != self.schema:
            raise ModelError("initial state was built for a different schema")
        if self.goal.kind is not Kind.BOOLEAN:
            raise ModelError("goal must be a boolean expression")
        indices = [e.index for e in self.events]
        if indices != sorted(indices) or len(set(indices)) != len(indices):
            raise ModelError("events must be listed in strictly increasing declaration index")
        names = [a.name for a in self.actions]
        if len(set(names)) != len(names):
            raise ModelError("duplicate action names")
        self._check_references()

        schema = self.schema
        object.__setattr__(self, "_actions", {a.name: a.compiled(schema) for a in self.actions})
        object.__setattr__(self, "_events", [e.compiled(schema) for e in self.events])
        object.__setattr__(self, "_processes", [p.compiled(schema) for p in self.processes])
        object.__setattr__(self, "_goal", self.goal.compile(schema))

    def _check_references(self) -> None:
        exprs: List[Tuple[str, Expr]] = [("goal", self.goal)]
        writes: List[Tuple[str, str, Kind]] = []
        for a in self.actions:
            exprs.append((a.name, a.precondition))
            for eff in a.effects:
                exprs.append((a.name, eff.value))
                writes.append((a.name, eff.fluent, eff.value.kind))
        for e in self.events:
            exprs.append((e.name, e.precondition))
            for eff in e.effects:
                exprs.append((e.name, eff.value))
                writes.append((e.name, eff.fluent, eff.value.kind))
        for p in self.processes:
            exprs.append((p.name, p.condition))
            for r in p.rates:
                exprs.append((p.name, r.rate))
                writes.append((p.name, r.fluent, Kind.NUMERIC))
        for owner, expr in exprs:
            for name in expr.fluents():
                if name not in self.schema:
                    raise ModelError(f"{owner} references undeclared fluent {name}")
        for owner, name, kind in writes:
            if self.schema.decl(name).kind is not kind:
                raise ModelError(f"{owner} assigns a {kind.value} value to {name}")

    def action(self, name: str) -> ActionDef:
        for a in self.actions:
            if a.name == name:
                return a
        raise ModelError(f"unknown action: {name}")

    @property
    def event_kinds(self) -> FrozenSet[str]:
        return frozenset(e.kind for e in self.events)


# =================== STEP SEMANTICS ===================

def _fire(state: State, compiled_events) -> Tuple[State, List[str]]:
    values = list(state.values)
    fired: List[str] = []
    rescan = True
    while rescan:
        rescan = False
        for name, pre, effects in compiled_events:
            if pre(values):
                updates = [(i, fn(values)) for i, fn in effects]
                for i, x in updates:
                    values[i] = x
                fired.append(name)
                if len(fired) > CASCADE_CAP:
                    raise CascadeDivergenceError(
                        f"event cascade divergence: more than {CASCADE_CAP} firings at t={state.time}",
                        fired[-20:],
                    )
                rescan = True
                break
    if not fired:
        return state, fired
    return State(state.schema, tuple(values), state.tick, state.time), fired


def _advance(state: State, compiled_processes, dt: float) -> State:
    values = state.values
    rates: Dict[int, float] = {}
    for name, condition, flows in compiled_processes:
        if condition(values):
            for i, rate in flows:
                if i in rates:
                    raise ModelError(
                        f"duplicate flow on {state.schema.decls[i].name} (process {name})"
                    )
                rates[i] = rate(values)
    tick = state.tick + 1
    if not rates:
        return State(state.schema, values, tick, tick * dt)
    new = list(values)
    for i, r in rates.items():
        new[i] = values[i] + r * dt
    return State(state.schema, tuple(new), tick, tick * dt)


def _apply(state: State, compiled_action) -> State:
    name, pre, effects = compiled_action
    values = state.values
    if not pre(values):
        raise InapplicableActionError(f"action {name} is not applicable at t={state.time}")
    updates = [(i, fn(values)) for i, fn in effects]
    new = list(values)
    for i, x in updates:
        new[i] = x
    return State(state.schema, tuple(new), state.tick, state.time)


def fire_events(state: State, events: Iterable[EventDef]) -> Tuple[State, List[str]]:
    """Fire enabled events in declaration order until none is enabled."""
    return _fire(state, [e.compiled(state.schema) for e in events])


def advance(state: State, processes: Iterable[ProcessDef], dt: float) -> State:
    """One explicit-Euler step of every active process."""
    return _advance(state, [p.compiled(state.schema) for p in processes], dt)


def apply_action(state: State, action: ActionDef) -> State:
    return _apply(state, action.compiled(state.schema))


@dataclass(frozen=True)
class TickRecord:
    """Outcome of one tick: the decision, events fired, and both end states."""
    before: State
    after: State
    decision: str
    fired: Tuple[str, ...]

    @property
    def state(self) -> State:
        return self.after

    def changes(self) -> List[Tuple[str, Value]]:
        return [
            (decl.name, new)
            for decl, old, new in zip(self.after.schema, self.before.values, self.after.values)
            if old != new
        ]


def step(state: State, problem: HybridProblem, decision: Optional[str] = WAIT) -> TickRecord:
    """One tick with its firing log."""
    decision = decision or WAIT
    s = state
    if decision != WAIT:
        compiled = problem._actions.get(decision)
        if compiled is None:
            raise InapplicableActionError(f"unknown action: {decision}")
        s = _apply(s, compiled)
    s, fired_pre = _fire(s, problem._events)
    s = _advance(s, problem._processes, problem.dt)
    s, fired_post = _fire(s, problem._events)
    return TickRecord(state, s, decision, tuple(fired_pre) + tuple(fired_post))


def tick(state: State, problem: HybridProblem, decision: Optional[str] = WAIT) -> State:
    """Pure tick: action, events, flow, events."""
    return step(state, problem, decision).after


def applicable_actions(state: State, problem: HybridProblem) -> List[str]:
    values = state.values
    return [name for name, (_, pre, _) in problem._actions.items() if pre(values)]


def goal_holds(state: State, problem: HybridProblem) -> bool:
    return bool(problem._goal(state.values))


def check_dt(problem: HybridProblem, dt: float) -> None:
    if dt != problem.dt:
        raise ConfigurationError(f"dt mismatch: configured {dt}, problem uses {problem.dt}")


# =================== ORDER INDEPENDENCE ===================

@dataclass
class OrderReport:
    """End states reached by firing the same events under permuted orders."""
    reference: State
    outcomes: List[State] = field(default_factory=list)
    orders: List[List[str]] = field(default_factory=list)

    @property
    def ambiguous(self) -> bool:
        return any(o.values != self.reference.values for o in self.outcomes)

    def differing_fluents(self) -> List[str]:
        names = set()
        for outcome in self.outcomes:
            for decl, a, b in zip(self.reference.schema, self.reference.values, outcome.values):
                if a != b:
                    names.add(decl.name)
        return sorted(names)


def check_order_independence(problem: HybridProblem, state: State,
                             permutations: int = 5, seed: int = 0) -> OrderReport:
    """Fire events under shuffled declaration orders and compare end states."""
    reference, _ = _fire(state, problem._events)
    report = OrderReport(reference=reference)
    rng = random.Random(seed)
    for _ in range(permutations):
        order = list(problem.events)
        rng.shuffle(order)
        outcome, _ = fire_events(state, order)
        report.outcomes.append(outcome)
        report.orders.append([e.name for e in order])
    if report.ambiguous:
        logger.warning(
            f"Model ambiguity in {problem.name or 'problem'}: end state depends on event order "
            f"({', '.join(report.differing_fluents()[:8])})"
        )
    return report
