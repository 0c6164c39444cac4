"""
Behavior expression language of elementary processes.

Expressions are immutable trees. They are evaluated against a :class:`Scope`
holding the current-tick input intervals and the values of parameters,
buffers and local variables. Evaluation is total: division and modulo by zero
yield ``0`` and ``ft(x)`` on an empty interval falls back to the buffered
value of ``x``.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from procview.errors import EvaluationError, SpecTypeError, UnresolvedReferenceError
from procview.streams.interval import EMPTY, TimeInterval
from procview.streams.message import BOOL, INT, Message, MsgKind, MsgType, enum_type

ARITHMETIC_OPS = ("+", "-", "*", "/", "%")
ORDER_OPS = ("<", "<=", ">", ">=")
EQUALITY_OPS = ("==", "!=")
BOOLEAN_OPS = ("and", "or")
BINARY_OPS = ARITHMETIC_OPS + ORDER_OPS + EQUALITY_OPS + BOOLEAN_OPS
UNARY_OPS = ("-", "not")


@dataclass(frozen=True)
class Const:
    value: Message


@dataclass(frozen=True)
class Ref:
    """Reference to a parameter, buffer (``xBuf``) or local variable."""

    name: str


@dataclass(frozen=True)
class Ft:
    """First message of the current interval of an input channel."""

    channel: str


@dataclass(frozen=True)
class Present:
    """True iff the current interval of an input channel is nonempty."""

    channel: str


@dataclass(frozen=True)
class Count:
    """Number of messages in the current interval of an input channel."""

    channel: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise ValueError(f"Unknown unary operator {self.op!r}.")


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"Unknown binary operator {self.op!r}.")


@dataclass(frozen=True)
class Cond:
    cond: "Expr"
    then: "Expr"
    orelse: "Expr"


@dataclass(frozen=True)
class IntervalLit:
    """Interval constructor: ``[]`` when `element` is None, ``[e]`` otherwise."""

    element: Optional["Expr"] = None


Expr = Union[Const, Ref, Ft, Present, Count, Unary, Binary, Cond, IntervalLit]
Value = Union[Message, TimeInterval]


@dataclass(frozen=True)
class IntervalType:
    """Type of an interval-valued expression; `element` None means ``[]``."""

    element: Optional[MsgType] = None

    def __str__(self):
        return f"[{self.element}]" if self.element else "[]"


ExprType = Union[MsgType, IntervalType]


def children(expr: Expr) -> Tuple[Expr, ...]:
    if isinstance(expr, Unary):
        return (expr.operand,)
    if isinstance(expr, Binary):
        return (expr.left, expr.right)
    if isinstance(expr, Cond):
        return (expr.cond, expr.then, expr.orelse)
    if isinstance(expr, IntervalLit) and expr.element is not None:
        return (expr.element,)
    return ()


def walk(expr: Expr) -> Iterator[Expr]:
    """Yield `expr` and all its sub-expressions in pre-order."""
    yield expr
    for child in children(expr):
        yield from walk(child)


def referenced_names(expr: Expr) -> Tuple[str, ...]:
    """Names read through :class:`Ref`, in first-occurrence order."""
    seen: Dict[str, None] = {}
    for node in walk(expr):
        if isinstance(node, Ref):
            seen.setdefault(node.name)
    return tuple(seen)


def referenced_channels(expr: Expr) -> Tuple[str, ...]:
    """Channels read through ``ft``, ``present`` or ``count``."""
    seen: Dict[str, None] = {}
    for node in walk(expr):
        if isinstance(node, (Ft, Present, Count)):
            seen.setdefault(node.channel)
    return tuple(seen)


class Scope:
    """
    Evaluation context of an expression at one tick.

    Args:
        values (Mapping[str, Message]): Parameters, buffers and locals by name.
        inputs (Mapping[str, TimeInterval]): Current-tick input intervals. A
            missing channel reads as the empty interval.
        fallback (Mapping[str, Message]): Value returned by ``ft(x)`` when the
            current interval of ``x`` is empty.
    """

    def __init__(
        self,
        values: Mapping[str, Message],
        inputs: Mapping[str, TimeInterval],
        fallback: Optional[Mapping[str, Message]] = None,
    ):
        self.values = values
        self.inputs = inputs
        self.fallback = fallback or {}

    def lookup(self, name: str) -> Message:
        try:
            return self.values[name]
        except KeyError:
            raise UnresolvedReferenceError(f"Unknown symbol {name!r}.") from None

    def interval(self, channel: str) -> TimeInterval:
        return self.inputs.get(channel, EMPTY)

    def first(self, channel: str) -> Message:
        interval = self.interval(channel)
        if interval:
            return interval.messages[0]
        try:
            return self.fallback[channel]
        except KeyError:
            raise UnresolvedReferenceError(
                f"ft({channel}) has neither a message nor a buffered value."
            ) from None


def _int(value: Value, op: str) -> int:
    if not isinstance(value, Message) or value.kind is not MsgKind.INT:
        raise EvaluationError(f"Operator {op!r} expects Int operands, but got {value}.")
    return value.value


def _bool(value: Value, op: str) -> bool:
    if not isinstance(value, Message) or value.kind is not MsgKind.BOOL:
        raise EvaluationError(
            f"Operator {op!r} expects Bool operands, but got {value}."
        )
    return value.value


def _arith(op: str, a: int, b: int) -> int:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if b == 0:
        return 0
    return a // b if op == "/" else a % b


def evaluate(expr: Expr, scope: Scope) -> Value:
    """
    Evaluate `expr` in `scope`.

    Returns:
        Message | TimeInterval: A message for scalar expressions, an interval
        for interval constructors.

    Raises:
        UnresolvedReferenceError: If a name is missing from the scope.
        EvaluationError: If an operator is applied to operands of the wrong kind.
    """
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Ref):
        return scope.lookup(expr.name)
    if isinstance(expr, Ft):
        return scope.first(expr.channel)
    if isinstance(expr, Present):
        return Message.of_bool(bool(scope.interval(expr.channel)))
    if isinstance(expr, Count):
        return Message.of_int(len(scope.interval(expr.channel)))
    if isinstance(expr, IntervalLit):
        if expr.element is None:
            return EMPTY
        element = evaluate(expr.element, scope)
        if not isinstance(element, Message):
            raise EvaluationError("Intervals cannot be nested.")
        return TimeInterval((element,))
    if isinstance(expr, Unary):
        operand = evaluate(expr.operand, scope)
        if expr.op == "-":
            return Message.of_int(-_int(operand, "-"))
        return Message.of_bool(not _bool(operand, "not"))
    if isinstance(expr, Cond):
        branch = expr.then if _bool(evaluate(expr.cond, scope), "if") else expr.orelse
        return evaluate(branch, scope)
    if isinstance(expr, Binary):
        op = expr.op
        if op in BOOLEAN_OPS:
            left = _bool(evaluate(expr.left, scope), op)
            if op == "and" and not left:
                return Message.of_bool(False)
            if op == "or" and left:
                return Message.of_bool(True)
            return Message.of_bool(_bool(evaluate(expr.right, scope), op))
        left, right = evaluate(expr.left, scope), evaluate(expr.right, scope)
        if op in EQUALITY_OPS:
            return Message.of_bool((left == right) == (op == "=="))
        a, b = _int(left, op), _int(right, op)
        if op in ARITHMETIC_OPS:
            return Message.of_int(_arith(op, a, b))
        return Message.of_bool(
            {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
        )
    raise TypeError(
        f"`expr` expects an expression node, but got {type(expr).__name__}."
    )


def evaluate_bool(expr: Expr, scope: Scope) -> bool:
    """Evaluate a predicate, raising :class:`EvaluationError` on non-Bool results."""
    return _bool(evaluate(expr, scope), "predicate")


def assignable(target: ExprType, value: ExprType) -> bool:
    """
    Return True if a value of type `value` may be stored where `target` is
    expected. Enumerated values fit any enumeration declaring their symbols, and
    ``[]`` fits every interval type.
    """
    if isinstance(target, IntervalType) or isinstance(value, IntervalType):
        if not (isinstance(target, IntervalType) and isinstance(value, IntervalType)):
            return False
        if value.element is None or target.element is None:
            return True
        return assignable(target.element, value.element)
    if target.kind is not value.kind:
        return False
    if target.kind is MsgKind.ENUM:
        return set(value.symbols) <= set(target.symbols)
    return True


def _join(a: ExprType, b: ExprType) -> Optional[ExprType]:
    """Smallest type both `a` and `b` fit in, or None."""
    if assignable(a, b):
        return a
    if assignable(b, a):
        return b
    return None


def literal_type(message: Message) -> MsgType:
    if message.kind is MsgKind.ENUM:
        return enum_type(message.value)
    return MsgType(message.kind)


def infer(
    expr: Expr,
    names: Mapping[str, MsgType],
    channels: Mapping[str, MsgType],
) -> ExprType:
    """
    Infer the type of `expr`.

    Args:
        names: Types of the parameters, buffers and locals in scope.
        channels: Types of the input channels in scope.

    Raises:
        UnresolvedReferenceError: If a name or channel is not in scope.
        SpecTypeError: If an operator is applied to operands of the wrong type.
    """

    def channel(name: str) -> MsgType:
        if name not in channels:
            raise UnresolvedReferenceError(f"Unknown input channel {name!r}.")
        return channels[name]

    def expect(t: ExprType, kind: MsgType, what: str) -> None:
        if isinstance(t, IntervalType) or t.kind is not kind.kind:
            raise SpecTypeError(f"{what} expects {kind}, but got {t}.")

    if isinstance(expr, Const):
        return literal_type(expr.value)
    if isinstance(expr, Ref):
        if expr.name not in names:
            raise UnresolvedReferenceError(f"Unknown symbol {expr.name!r}.")
        return names[expr.name]
    if isinstance(expr, Ft):
        return channel(expr.channel)
    if isinstance(expr, Present):
        channel(expr.channel)
        return BOOL
    if isinstance(expr, Count):
        channel(expr.channel)
        return INT
    if isinstance(expr, IntervalLit):
        if expr.element is None:
            return IntervalType()
        element = infer(expr.element, names, channels)
        if isinstance(element, IntervalType):
            raise SpecTypeError("Intervals cannot be nested.")
        return IntervalType(element)
    if isinstance(expr, Unary):
        operand = infer(expr.operand, names, channels)
        if expr.op == "-":
            expect(operand, INT, "Unary '-'")
            return INT
        expect(operand, BOOL, "'not'")
        return BOOL
    if isinstance(expr, Cond):
        expect(infer(expr.cond, names, channels), BOOL, "'if' condition")
        then = infer(expr.then, names, channels)
        orelse = infer(expr.orelse, names, channels)
        joined = _join(then, orelse)
        if joined is None:
            raise SpecTypeError(
                f"Branches of 'if' have incompatible types {then} and {orelse}."
            )
        return joined
    if isinstance(expr, Binary):
        left = infer(expr.left, names, channels)
        right = infer(expr.right, names, channels)
        op = expr.op
        if op in BOOLEAN_OPS:
            expect(left, BOOL, f"Operator {op!r}")
            expect(right, BOOL, f"Operator {op!r}")
            return BOOL
        if op in EQUALITY_OPS:
            if isinstance(left, IntervalType) or _join(left, right) is None:
                raise SpecTypeError(f"Cannot compare {left} with {right}.")
            return BOOL
        expect(left, INT, f"Operator {op!r}")
        expect(right, INT, f"Operator {op!r}")
        return INT if op in ARITHMETIC_OPS else BOOL
    raise TypeError(
        f"`expr` expects an expression node, but got {type(expr).__name__}."
    )


def format_message(message: Message) -> str:
    """Render a message as an expression literal."""
    if message.kind is MsgKind.EVENT:
        return "ev"
    return str(message)


def format_expr(expr: Expr) -> str:
    """
    Render `expr` in the concrete syntax of specification documents.

    Binary expressions are fully parenthesized, so the output re-parses to the
    same tree regardless of operator precedence.
    """
    if isinstance(expr, Const):
        return format_message(expr.value)
    if isinstance(expr, Ref):
        return expr.name
    if isinstance(expr, Ft):
        return f"ft({expr.channel})"
    if isinstance(expr, Present):
        return f"present({expr.channel})"
    if isinstance(expr, Count):
        return f"count({expr.channel})"
    if isinstance(expr, IntervalLit):
        return "[]" if expr.element is None else f"[{format_expr(expr.element)}]"
    if isinstance(expr, Unary):
        sep = "" if expr.op == "-" else " "
        return f"{expr.op}{sep}({format_expr(expr.operand)})"
    if isinstance(expr, Binary):
        return f"({format_expr(expr.left)} {expr.op} {format_expr(expr.right)})"
    if isinstance(expr, Cond):
        return (
            f"(if {format_expr(expr.cond)} then {format_expr(expr.then)} "
            f"else {format_expr(expr.orelse)})"
        )
    raise TypeError(
        f"`expr` expects an expression node, but got {type(expr).__name__}."
    )


# Shorthands for building behaviors programmatically
def const(value) -> Const:
    return Const(Message.coerce(value))


def ref(name: str) -> Ref:
    return Ref(name)


TRUE = Const(Message.of_bool(True))
FALSE = Const(Message.of_bool(False))
EMPTY_INTERVAL = IntervalLit()
EVENT_INTERVAL = IntervalLit(Const(Message.event()))
