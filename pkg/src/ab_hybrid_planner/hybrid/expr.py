"""
Side-effect-free expression language for preconditions, effects and goals.

Expressions are immutable trees. They are type-checked when built and can be
evaluated two ways that give bit-identical results: tree-walking against any
state that maps fluent names to values (``evaluate``), or through closures
compiled against a fluent schema (``Expr.compile``) which the model uses in
its inner loops.
"""

import math
import operator
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, FrozenSet, Sequence, Tuple, Union

from ..errors import DomainError, EvaluationError, ExprTypeError

Value = Union[float, bool]
Compiled = Callable[[Sequence[Value]], Value]

DEG_TO_RAD = math.pi / 180.0

_COS_LIMIT = math.pi / 2.0 + 1e-12


class Kind(str, Enum):
    """Static type of an expression."""
    NUMERIC = "numeric"
    BOOLEAN = "boolean"


# =================== INTRINSICS ===================

def approx_sin(theta_deg: float) -> float:
    """Bhaskara sine for an angle in degrees, valid on [0, 180]."""
    if not 0.0 <= theta_deg <= 180.0:
        raise DomainError(f"approx_sin argument {theta_deg!r} outside [0, 180] degrees")
    p = theta_deg * (180.0 - theta_deg)
    return 4.0 * p / (40500.0 - p)


def approx_cos(theta_rad: float) -> float:
    """Small-angle cosine for an angle in radians, valid on [-pi/2, pi/2]."""
    if abs(theta_rad) > _COS_LIMIT:
        raise DomainError(f"approx_cos argument {theta_rad!r} outside [-pi/2, pi/2] radians")
    return 1.0 - theta_rad * theta_rad / 2.0


def checked_sqrt(x: float) -> float:
    if x < 0.0:
        raise DomainError(f"sqrt of negative value {x!r}")
    return math.sqrt(x)


# =================== NODES ===================

class Expr:
    """Base class of all expression nodes."""

    @property
    def kind(self) -> Kind:
        raise NotImplementedError

    def children(self) -> Tuple["Expr", ...]:
        return ()

    def fluents(self) -> FrozenSet[str]:
        """Names of all fluents referenced anywhere in the tree."""
        names = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, Fluent):
                names.add(node.name)
            stack.extend(node.children())
        return frozenset(names)

    def evaluate(self, state: Any) -> Value:
        return evaluate(self, state)

    def compile(self, schema: Any) -> Compiled:
        """Closure over a value tuple laid out in ``schema`` order.

        The result is cached per schema object on the node.
        """
        cache: Dict[int, Tuple[Any, Compiled]] = self.__dict__.setdefault("_compiled", {})
        hit = cache.get(id(schema))
        if hit is not None and hit[0] is schema:
            return hit[1]
        fn = self._build(schema.index_of)
        cache[id(schema)] = (schema, fn)
        return fn

    def _build(self, resolve: Callable[[str], int]) -> Compiled:
        raise NotImplementedError

    def _eval(self, state: Any) -> Value:
        raise NotImplementedError

    # Arithmetic sugar; comparisons go through lt/le/eq/ge/gt so that
    # structural equality of nodes keeps working.
    def __add__(self, other): return BinOp("+", self, lit(other))
    def __radd__(self, other): return BinOp("+", lit(other), self)
    def __sub__(self, other): return BinOp("-", self, lit(other))
    def __rsub__(self, other): return BinOp("-", lit(other), self)
    def __mul__(self, other): return BinOp("*", self, lit(other))
    def __rmul__(self, other): return BinOp("*", lit(other), self)
    def __truediv__(self, other): return BinOp("/", self, lit(other))
    def __rtruediv__(self, other): return BinOp("/", lit(other), self)
    def __neg__(self): return Neg(self)


def _require(node: Expr, child: Expr, kind: Kind) -> None:
    if not isinstance(child, Expr):
        raise ExprTypeError(f"{type(node).__name__}: child {child!r} is not an expression")
    if child.kind is not kind:
        raise ExprTypeError(
            f"{type(node).__name__}: expected {kind.value} child, got {child.kind.value} ({child})"
        )


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, (int, float)):
            raise ExprTypeError(f"numeric literal expected, got {self.value!r}")
        object.__setattr__(self, "value", float(self.value))

    @property
    def kind(self) -> Kind:
        return Kind.NUMERIC

    def _eval(self, state):
        return self.value

    def _build(self, resolve):
        value = self.value
        return lambda v: value

    def __str__(self) -> str:
        return repr(self.value)


@dataclass(frozen=True)
class Bool(Expr):
    value: bool

    def __post_init__(self):
        if not isinstance(self.value, bool):
            raise ExprTypeError(f"boolean literal expected, got {self.value!r}")

    @property
    def kind(self) -> Kind:
        return Kind.BOOLEAN

    def _eval(self, state):
        return self.value

    def _build(self, resolve):
        value = self.value
        return lambda v: value

    def __str__(self) -> str:
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Fluent(Expr):
    """Reference to a grounded fluent by name."""
    name: str
    fluent_kind: Kind = Kind.NUMERIC

    @property
    def kind(self) -> Kind:
        return self.fluent_kind

    def _eval(self, state):
        return state[self.name]

    def _build(self, resolve):
        return operator.itemgetter(resolve(self.name))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    def __post_init__(self):
        _require(self, self.operand, Kind.NUMERIC)

    @property
    def kind(self) -> Kind:
        return Kind.NUMERIC

    def children(self):
        return (self.operand,)

    def _eval(self, state):
        return -self.operand._eval(state)

    def _build(self, resolve):
        f = self.operand._build(resolve)
        return lambda v: -f(v)

    def __str__(self) -> str:
        return f"(- {self.operand})"


_ARITH = {"+": operator.add, "-": operator.sub, "*": operator.mul}


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in ("+", "-", "*", "/"):
            raise ExprTypeError(f"unknown arithmetic operator {self.op!r}")
        _require(self, self.left, Kind.NUMERIC)
        _require(self, self.right, Kind.NUMERIC)

    @property
    def kind(self) -> Kind:
        return Kind.NUMERIC

    def children(self):
        return (self.left, self.right)

    def _divide(self, a: float, b: float) -> float:
        if b == 0.0:
            raise EvaluationError(f"division by zero in {self}", subexpression=str(self))
        return a / b

    def _eval(self, state):
        a = self.left._eval(state)
        b = self.right._eval(state)
        if self.op == "/":
            return self._divide(a, b)
        return _ARITH[self.op](a, b)

    def _build(self, resolve):
        fa = self.left._build(resolve)
        fb = self.right._build(resolve)
        if self.op == "+":
            return lambda v: fa(v) + fb(v)
        if self.op == "-":
            return lambda v: fa(v) - fb(v)
        if self.op == "*":
            return lambda v: fa(v) * fb(v)
        divide = self._divide
        return lambda v: divide(fa(v), fb(v))

    def __str__(self) -> str:
        return f"({self.op} {self.left} {self.right})"


_COMPARE = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}


@dataclass(frozen=True)
class Compare(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in _COMPARE:
            raise ExprTypeError(f"unknown comparison {self.op!r}")
        _require(self, self.left, Kind.NUMERIC)
        _require(self, self.right, Kind.NUMERIC)

    @property
    def kind(self) -> Kind:
        return Kind.BOOLEAN

    def children(self):
        return (self.left, self.right)

    def _eval(self, state):
        return _COMPARE[self.op](self.left._eval(state), self.right._eval(state))

    def _build(self, resolve):
        fa = self.left._build(resolve)
        fb = self.right._build(resolve)
        cmp = _COMPARE[self.op]
        return lambda v: cmp(fa(v), fb(v))

    def __str__(self) -> str:
        return f"({self.op} {self.left} {self.right})"


@dataclass(frozen=True)
class And(Expr):
    operands: Tuple[Expr, ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        for child in self.operands:
            _require(self, child, Kind.BOOLEAN)

    @property
    def kind(self) -> Kind:
        return Kind.BOOLEAN

    def children(self):
        return self.operands

    def _eval(self, state):
        return all(child._eval(state) for child in self.operands)

    def _build(self, resolve):
        fs = tuple(child._build(resolve) for child in self.operands)
        if len(fs) == 2:
            f0, f1 = fs
            return lambda v: f0(v) and f1(v)

        def conj(v):
            for f in fs:
                if not f(v):
                    return False
            return True
        return conj

    def __str__(self) -> str:
        return "(and " + " ".join(str(c) for c in self.operands) + ")"


@dataclass(frozen=True)
class Or(Expr):
    operands: Tuple[Expr, ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        for child in self.operands:
            _require(self, child, Kind.BOOLEAN)

    @property
    def kind(self) -> Kind:
        return Kind.BOOLEAN

    def children(self):
        return self.operands

    def _eval(self, state):
        return any(child._eval(state) for child in self.operands)

    def _build(self, resolve):
        fs = tuple(child._build(resolve) for child in self.operands)

        def disj(v):
            for f in fs:
                if f(v):
                    return True
            return False
        return disj

    def __str__(self) -> str:
        return "(or " + " ".join(str(c) for c in self.operands) + ")"


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr

    def __post_init__(self):
        _require(self, self.operand, Kind.BOOLEAN)

    @property
    def kind(self) -> Kind:
        return Kind.BOOLEAN

    def children(self):
        return (self.operand,)

    def _eval(self, state):
        return not self.operand._eval(state)

    def _build(self, resolve):
        f = self.operand._build(resolve)
        return lambda v: not f(v)

    def __str__(self) -> str:
        return f"(not {self.operand})"


@dataclass(frozen=True)
class Call(Expr):
    """Intrinsic numeric function: ``approx_sin`` (degrees), ``approx_cos`` (radians), ``sqrt``."""
    function: str
    argument: Expr

    def __post_init__(self):
        if self.function not in _INTRINSICS:
            raise ExprTypeError(f"unknown intrinsic {self.function!r}")
        _require(self, self.argument, Kind.NUMERIC)

    @property
    def kind(self) -> Kind:
        return Kind.NUMERIC

    def children(self):
        return (self.argument,)

    def _eval(self, state):
        return _INTRINSICS[self.function](self.argument._eval(state))

    def _build(self, resolve):
        f = self.argument._build(resolve)
        fn = _INTRINSICS[self.function]
        return lambda v: fn(f(v))

    def __str__(self) -> str:
        return f"({self.function} {self.argument})"


_INTRINSICS = {
    "approx_sin": approx_sin,
    "approx_cos": approx_cos,
    "sqrt": checked_sqrt,
}


# =================== EVALUATION ===================

def evaluate(expr: Expr, state: Any) -> Value:
    """Value of ``expr`` under ``state`` (anything indexable by fluent name)."""
    return expr._eval(state)


# =================== BUILDERS ===================

def lit(value: Any) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, bool):
        return Bool(value)
    return Num(value)


def num(name: str) -> Fluent:
    return Fluent(name, Kind.NUMERIC)


def flag(name: str) -> Fluent:
    return Fluent(name, Kind.BOOLEAN)


def lt(a, b) -> Compare: return Compare("<", lit(a), lit(b))
def le(a, b) -> Compare: return Compare("<=", lit(a), lit(b))
def eq(a, b) -> Compare: return Compare("=", lit(a), lit(b))
def ge(a, b) -> Compare: return Compare(">=", lit(a), lit(b))
def gt(a, b) -> Compare: return Compare(">", lit(a), lit(b))


def and_(*operands) -> Expr:
    return And(tuple(lit(o) for o in operands))


def or_(*operands) -> Expr:
    return Or(tuple(lit(o) for o in operands))


def not_(operand) -> Expr:
    return Not(lit(operand))


def sin_deg(argument) -> Expr:
    return Call("approx_sin", lit(argument))


def cos_rad(argument) -> Expr:
    return Call("approx_cos", lit(argument))


def sqrt(argument) -> Expr:
    return Call("sqrt", lit(argument))
