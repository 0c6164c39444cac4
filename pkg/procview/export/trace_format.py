import json
from typing import Any, Dict, Iterable, Optional

from procview.process.component import ProcessMode
from procview.simulation.trace import ComponentPorts, Trace, TraceWarning
from procview.streams.interval import TimeInterval
from procview.streams.message import Message, MsgKind, MsgType, enum_type
from procview.streams.stream import TimedStream

TEXT = "text"
STRUCTURED = "structured"
TRACE_FORMATS = (TEXT, STRUCTURED)


def format_type(msg_type: MsgType) -> str:
    return msg_type.name


def parse_type(name: str) -> MsgType:
    """Inverse of :func:`format_type`: ``Int``, ``Bool``, ``Event`` or ``{a, b}``."""
    if name.startswith("{") and name.endswith("}"):
        return enum_type(*(s.strip() for s in name[1:-1].split(",")))
    try:
        return MsgType(MsgKind(name))
    except ValueError:
        raise ValueError(
            f"`name` expects a message type, but got {name!r}."
        ) from None


def trace_to_text(trace: Trace, channels: Optional[Iterable[str]] = None) -> str:
    """
    Render a trace as one line per tick.

    Each line lists the nonempty intervals of the selected channels,
    ``t | P.stop=⟨√⟩ | amp.z=⟨√⟩``; a silent tick shows ``-``. Warnings follow
    the line of their tick, prefixed with ``!``.

    Args:
        trace (Trace): The trace.
        channels (Iterable[str], optional): Channels to show, all by default.
    """
    names = list(trace.channels) if channels is None else list(channels)
    streams = {name: trace.stream(name) for name in names}
    width = len(str(max(trace.horizon - 1, 0)))
    warnings: Dict[int, list] = {}
    for w in trace.warnings:
        warnings.setdefault(w.tick, []).append(w)

    lines = []
    for t in range(trace.horizon):
        cells = [
            f"{name}={stream.interval_at(t)}"
            for name, stream in streams.items()
            if stream.interval_at(t)
        ]
        lines.append(f"{t:>{width}} | " + (" | ".join(cells) if cells else "-"))
        lines.extend(f"{' ' * width} ! {w}" for w in warnings.get(t, ()))
    if trace.first_violation is not None:
        lines.append(f"unconstrained from t={trace.first_violation}")
    return "\n".join(lines) + "\n"


def trace_to_dict(trace: Trace) -> Dict[str, Any]:
    """
    Structured form of a trace.

    Top-level keys: ``horizon``, ``channels`` (one list of messages per tick),
    ``modes``, ``warnings``, plus ``types``, ``rules``, ``components`` and
    ``first_violation`` so the trace can be loaded back. Events are encoded
    as ``"ev"``, Ints and Bools as JSON numbers and booleans, symbols as
    ``"#name"``.
    """
    return {
        "horizon": trace.horizon,
        "channels": {
            name: [[m.to_json() for m in interval] for interval in stream]
            for name, stream in trace.channels.items()
        },
        "types": {
            name: format_type(stream.channel_type)
            for name, stream in trace.channels.items()
        },
        "modes": {
            name: [str(mode) for mode in modes] for name, modes in trace.modes.items()
        },
        "rules": {name: list(rules) for name, rules in trace.rules.items()},
        "warnings": [
            {
                "tick": w.tick,
                "kind": w.kind,
                "location": w.location,
                "message": w.message,
            }
            for w in trace.warnings
        ],
        "components": {
            name: {"kind": p.kind, "inputs": p.inputs, "outputs": p.outputs}
            for name, p in trace.components.items()
        },
        "first_violation": trace.first_violation,
    }


def trace_from_dict(data: Dict[str, Any]) -> Trace:
    """
    Rebuild a trace from :func:`trace_to_dict` output.

    Channels without a ``types`` entry are typed by their first message, and
    default to Event when silent.
    """
    types = data.get("types", {})
    channels = {}
    for name, ticks in data["channels"].items():
        intervals = tuple(
            TimeInterval(tuple(Message.from_json(v) for v in tick)) for tick in ticks
        )
        if name in types:
            msg_type = parse_type(types[name])
        else:
            msg_type = _infer_type([m for i in intervals for m in i])
        channels[name] = TimedStream(msg_type, intervals)
    return Trace(
        horizon=data["horizon"],
        channels=channels,
        modes={
            name: tuple(ProcessMode.of(m == str(ProcessMode.ACTIVE)) for m in modes)
            for name, modes in data.get("modes", {}).items()
        },
        rules={name: tuple(r) for name, r in data.get("rules", {}).items()},
        warnings=[TraceWarning(**w) for w in data.get("warnings", [])],
        components={
            name: ComponentPorts(p["kind"], dict(p["inputs"]), dict(p["outputs"]))
            for name, p in data.get("components", {}).items()
        },
        first_violation=data.get("first_violation"),
    )


def _infer_type(messages) -> MsgType:
    if not messages:
        return MsgType(MsgKind.EVENT)
    first = messages[0]
    if first.kind is MsgKind.ENUM:
        return enum_type(*dict.fromkeys(m.value for m in messages))
    return MsgType(first.kind)


def trace_to_json(trace: Trace, indent: Optional[int] = 2) -> str:
    """Structured export; keys are sorted so equal traces give equal text."""
    return json.dumps(trace_to_dict(trace), indent=indent, sort_keys=True) + "\n"


def trace_from_json(text: str) -> Trace:
    return trace_from_dict(json.loads(text))


def format_trace(trace: Trace, fmt: str = TEXT) -> str:
    """
    Render `trace` as ``"text"`` or ``"structured"`` (JSON).

    Raises:
        ValueError: If `fmt` is not a known format.
    """
    if fmt == TEXT:
        return trace_to_text(trace)
    if fmt == STRUCTURED:
        return trace_to_json(trace)
    raise ValueError(
        f"`fmt` expects one of {list(TRACE_FORMATS)}, but got {fmt!r}."
    )
