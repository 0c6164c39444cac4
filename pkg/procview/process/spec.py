import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional, Tuple

from procview._utils import _validate_identifier, _validate_typed_sequence, duplicates
from procview.config import BUFFER_SUFFIX, RESERVED_PORTS
from procview.errors import SpecTypeError, UnresolvedReferenceError
from procview.process.assumption import Assumption, IntervalPredicate, MsgBound
from procview.process.expr import (
    Expr,
    IntervalType,
    Scope,
    assignable,
    evaluate,
    infer,
    referenced_channels,
    referenced_names,
)
from procview.streams.message import BOOL, INT, Message, MsgKind, MsgType

logger = logging.getLogger(__name__)

INPUT = "input"
OUTPUT = "output"


def buffer_name(channel: str) -> str:
    """Name of the local variable buffering input `channel` (``xBuf``)."""
    return channel + BUFFER_SUFFIX


@dataclass(frozen=True)
class ChannelDecl:
    """
    A typed input or output channel of a process.

    Attributes:
        name (str): Channel name, unique within its process.
        msg_type (MsgType): Type of the messages on the channel.
        direction (str): ``"input"`` or ``"output"``.
    """

    name: str
    msg_type: MsgType
    direction: str

    def __post_init__(self):
        _validate_identifier(self.name)
        if self.direction not in (INPUT, OUTPUT):
            raise ValueError(
                f"`direction` expects 'input' or 'output', but got {self.direction!r}."
            )

    @property
    def is_input(self) -> bool:
        return self.direction == INPUT


@dataclass(frozen=True)
class BufferDecl:
    """One-element buffer ``xBuf`` of the data input `for_input`."""

    for_input: str
    init_value: Message

    @property
    def name(self) -> str:
        return buffer_name(self.for_input)


@dataclass(frozen=True)
class LocalDecl:
    """Local variable with its once-only initial value."""

    name: str
    msg_type: MsgType
    init_value: Message


@dataclass(frozen=True)
class ParamDecl:
    """Named constant of a process; `default` may be overridden by binding."""

    name: str
    msg_type: MsgType
    default: Message


@dataclass(frozen=True)
class Assignment:
    """``target := expr``. All assignments of one block read the pre-state."""

    target: str
    expr: Expr


@dataclass(frozen=True)
class BehaviorSpec:
    """
    Behavior of an elementary process.

    Attributes:
        pr_ending (Expr): Termination predicate, evaluated at every active tick.
        pr_calc (Tuple[Assignment, ...]): Effect of an active, non-final tick.
        pr_calc_f (Tuple[Assignment, ...] | None): Effect of the terminating
            tick; ``None`` reuses `pr_calc`.
        init_process (Tuple[Assignment, ...]): Local assignments applied at
            every (re)start.
        assumption (Tuple[Assumption, ...]): Assumptions on the input streams.
        locals (Tuple[LocalDecl, ...]): Local variables.
    """

    pr_ending: Expr
    pr_calc: Tuple[Assignment, ...] = ()
    pr_calc_f: Optional[Tuple[Assignment, ...]] = None
    init_process: Tuple[Assignment, ...] = ()
    assumption: Tuple[Assumption, ...] = ()
    locals: Tuple[LocalDecl, ...] = ()

    def __post_init__(self):
        for name in ("pr_calc", "init_process", "assumption", "locals"):
            value = getattr(self, name)
            _validate_typed_sequence(value, object, input_name=name)
            object.__setattr__(self, name, tuple(value))
        if self.pr_calc_f is not None:
            object.__setattr__(self, "pr_calc_f", tuple(self.pr_calc_f))

    @property
    def final_effect(self) -> Tuple[Assignment, ...]:
        return self.pr_calc if self.pr_calc_f is None else self.pr_calc_f


@dataclass(frozen=True)
class ElementaryProcessSpec:
    """
    Declarative specification of an elementary process.

    The entry (``start``) and exit (``stop``) channels are implicit; they are
    added when the specification is turned into a component.

    Example::

        >>> from procview.process import *
        >>> from procview.streams import INT
        >>> spec = ElementaryProcessSpec(
        ...     name="Count",
        ...     params=(ParamDecl("d", INT, Message.of_int(3)),),
        ...     behavior=BehaviorSpec(
        ...         locals=(LocalDecl("k", INT, Message.of_int(0)),),
        ...         init_process=(Assignment("k", const(1)),),
        ...         pr_ending=Binary(">=", ref("k"), ref("d")),
        ...         pr_calc=(Assignment("k", Binary("+", ref("k"), const(1))),),
        ...     ),
        ... )
        >>> validate(spec)
        []
    """

    name: str
    behavior: BehaviorSpec
    channels: Tuple[ChannelDecl, ...] = ()
    buffers: Tuple[BufferDecl, ...] = ()
    params: Tuple[ParamDecl, ...] = ()
    declared_wcet: Optional[Expr] = None

    def __post_init__(self):
        _validate_identifier(self.name)
        for name, item_type in (
            ("channels", ChannelDecl),
            ("buffers", BufferDecl),
            ("params", ParamDecl),
        ):
            value = getattr(self, name)
            _validate_typed_sequence(value, item_type, input_name=name)
            object.__setattr__(self, name, tuple(value))

    @property
    def inputs(self) -> Tuple[ChannelDecl, ...]:
        return tuple(c for c in self.channels if c.is_input)

    @property
    def outputs(self) -> Tuple[ChannelDecl, ...]:
        return tuple(c for c in self.channels if not c.is_input)

    def channel(self, name: str) -> ChannelDecl:
        for c in self.channels:
            if c.name == name:
                return c
        raise KeyError(name)

    def param_values(self) -> Dict[str, Message]:
        return {p.name: p.default for p in self.params}

    def bind(self, **values) -> "ElementaryProcessSpec":
        """
        Return a copy whose parameter defaults are replaced by `values`.

        Raises:
            KeyError: If a name is not a declared parameter.
            SpecTypeError: If a value does not match the parameter type.
        """
        declared = {p.name: p for p in self.params}
        params = list(self.params)
        for name, value in values.items():
            if name not in declared:
                raise KeyError(f"Process {self.name!r} has no parameter {name!r}.")
            message = Message.coerce(value)
            if not declared[name].msg_type.accepts(message):
                raise SpecTypeError(
                    f"Parameter {name!r} expects {declared[name].msg_type}, "
                    f"but got {message}."
                )
            params[params.index(declared[name])] = replace(
                declared[name], default=message
            )
        return replace(self, params=tuple(params))

    def wcet_bound(self) -> Optional[int]:
        """Evaluate the declared WCET against the parameter values."""
        if self.declared_wcet is None:
            return None
        value = evaluate(self.declared_wcet, Scope(self.param_values(), {}))
        if not isinstance(value, Message) or value.kind is not MsgKind.INT:
            raise SpecTypeError(f"The WCET of {self.name!r} must be an Int.")
        return value.value


@dataclass(frozen=True)
class Diagnostic:
    """
    One violated well-formedness rule.

    Attributes:
        code (str): Rule identifier, e.g. ``MissingBuffer``.
        message (str): Human-readable explanation.
        location (str): Where in the specification the problem lies.
    """

    code: str
    message: str
    location: str = field(default="")

    def __str__(self):
        where = f" [{self.location}]" if self.location else ""
        return f"{self.code}: {self.message}{where}"


def _check_expr(
    expr: Expr,
    names: Mapping[str, MsgType],
    channels: Mapping[str, MsgType],
    location: str,
    diagnostics: List[Diagnostic],
):
    """Type-check `expr`, appending diagnostics; returns the type or None."""
    before = len(diagnostics)
    for name in referenced_names(expr):
        if name not in names:
            diagnostics.append(
                Diagnostic("UnresolvedSymbol", f"Unknown symbol {name!r}.", location)
            )
    for channel in referenced_channels(expr):
        if channel not in channels:
            diagnostics.append(
                Diagnostic(
                    "UnresolvedSymbol", f"Unknown input channel {channel!r}.", location
                )
            )
    if len(diagnostics) > before:
        return None
    try:
        return infer(expr, names, channels)
    except (SpecTypeError, UnresolvedReferenceError) as e:
        diagnostics.append(Diagnostic("TypeMismatch", str(e), location))
        return None


def _check_block(
    block: Tuple[Assignment, ...],
    label: str,
    targets: Mapping[str, object],
    names: Mapping[str, MsgType],
    channels: Mapping[str, MsgType],
    diagnostics: List[Diagnostic],
):
    for name in duplicates(a.target for a in block):
        diagnostics.append(
            Diagnostic("DuplicateAssignment", f"{name!r} is assigned twice.", label)
        )
    for i, a in enumerate(block):
        location = f"{label}[{i}]"
        if a.target not in targets:
            code = "InvalidTarget" if a.target in names else "UnresolvedSymbol"
            diagnostics.append(
                Diagnostic(code, f"{a.target!r} cannot be assigned here.", location)
            )
            _check_expr(a.expr, names, channels, location, diagnostics)
            continue
        value_type = _check_expr(a.expr, names, channels, location, diagnostics)
        target_type = targets[a.target]
        if value_type is not None and not assignable(target_type, value_type):
            diagnostics.append(
                Diagnostic(
                    "TypeMismatch",
                    f"Cannot assign {value_type} to {a.target!r} "
                    f"of type {target_type}.",
                    location,
                )
            )


def validate(spec: ElementaryProcessSpec) -> List[Diagnostic]:
    """
    Check every well-formedness rule of an elementary process specification.

    Validation never raises on a malformed specification; every violation is
    returned as a :class:`Diagnostic`.

    Returns:
        List[Diagnostic]: Empty iff the specification is well formed.
    """
    diagnostics: List[Diagnostic] = []
    behavior = spec.behavior

    for c in spec.channels:
        if c.name in RESERVED_PORTS:
            diagnostics.append(
                Diagnostic(
                    "ReservedName",
                    f"{c.name!r} is generated automatically and cannot be declared.",
                    f"channel {c.name}",
                )
            )

    declared = (
        [c.name for c in spec.channels]
        + [b.name for b in spec.buffers]
        + [p.name for p in spec.params]
        + [v.name for v in behavior.locals]
    )
    for name in duplicates(declared):
        diagnostics.append(
            Diagnostic("DuplicateName", f"{name!r} is declared twice.", name)
        )

    inputs = {c.name: c.msg_type for c in spec.inputs}
    outputs = {c.name: c.msg_type for c in spec.outputs}
    buffered = {}
    for b in spec.buffers:
        if b.for_input not in inputs:
            diagnostics.append(
                Diagnostic(
                    "UnknownBufferChannel",
                    f"Buffer {b.name!r} refers to no input channel.",
                    f"buffer {b.for_input}",
                )
            )
        elif b.for_input in buffered:
            diagnostics.append(
                Diagnostic(
                    "DuplicateBuffer",
                    f"Input {b.for_input!r} has more than one buffer.",
                    f"buffer {b.for_input}",
                )
            )
        else:
            buffered[b.for_input] = b
            if not inputs[b.for_input].accepts(b.init_value):
                diagnostics.append(
                    Diagnostic(
                        "BufferTypeMismatch",
                        f"Initial value {b.init_value} does not match "
                        f"{inputs[b.for_input]}.",
                        f"buffer {b.for_input}",
                    )
                )
    for name in inputs:
        if name not in buffered:
            diagnostics.append(
                Diagnostic(
                    "MissingBuffer", f"Input {name!r} has no buffer.", f"channel {name}"
                )
            )

    for p in spec.params:
        if not p.msg_type.accepts(p.default):
            diagnostics.append(
                Diagnostic(
                    "TypeMismatch",
                    f"Default {p.default} does not match {p.msg_type}.",
                    f"param {p.name}",
                )
            )
    for v in behavior.locals:
        if not v.msg_type.accepts(v.init_value):
            diagnostics.append(
                Diagnostic(
                    "TypeMismatch",
                    f"Initial value {v.init_value} does not match {v.msg_type}.",
                    f"local {v.name}",
                )
            )

    params = {p.name: p.msg_type for p in spec.params}
    buffers = {buffer_name(c): inputs[c] for c in buffered}
    local_types = {v.name: v.msg_type for v in behavior.locals}
    names = {**params, **buffers, **local_types}

    ending = _check_expr(behavior.pr_ending, names, inputs, "ending", diagnostics)
    if ending is not None and not assignable(BOOL, ending):
        diagnostics.append(
            Diagnostic(
                "TypeMismatch", f"ending must be Bool, but got {ending}.", "ending"
            )
        )

    calc_targets = {
        **{name: IntervalType(t) for name, t in outputs.items()},
        **buffers,
        **local_types,
    }
    _check_block(behavior.pr_calc, "calc", calc_targets, names, inputs, diagnostics)
    if behavior.pr_calc_f is not None:
        _check_block(
            behavior.pr_calc_f, "calcF", calc_targets, names, inputs, diagnostics
        )
    _check_block(
        behavior.init_process, "initProcess", local_types, names, inputs, diagnostics
    )

    for i, a in enumerate(behavior.assumption):
        location = f"asm[{i}]"
        if isinstance(a, MsgBound):
            if a.channel not in inputs:
                diagnostics.append(
                    Diagnostic(
                        "UnresolvedSymbol",
                        f"Unknown input channel {a.channel!r}.",
                        location,
                    )
                )
        elif isinstance(a, IntervalPredicate):
            t = _check_expr(a.expr, params, inputs, location, diagnostics)
            if t is not None and not assignable(BOOL, t):
                diagnostics.append(
                    Diagnostic(
                        "TypeMismatch",
                        f"Assumption must be Bool, but got {t}.",
                        location,
                    )
                )
        else:
            diagnostics.append(
                Diagnostic(
                    "TypeMismatch",
                    f"Unsupported assumption {type(a).__name__}.",
                    location,
                )
            )

    if spec.declared_wcet is not None:
        t = _check_expr(spec.declared_wcet, params, {}, "wcet", diagnostics)
        if t is not None and not assignable(INT, t):
            diagnostics.append(
                Diagnostic("TypeMismatch", f"wcet must be Int, but got {t}.", "wcet")
            )

    if diagnostics:
        logger.debug(f"Process {spec.name!r}: {len(diagnostics)} diagnostic(s).")
    return diagnostics

