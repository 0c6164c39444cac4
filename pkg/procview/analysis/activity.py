from typing import Dict, Iterable, Tuple

from procview.errors import UnknownStreamError
from procview.simulation.trace import Trace
from procview.streams.stream import TimedStream, disjoint, interval_at

LOWER = "lower"
UPPER = "upper"
EXACT = "exact"
ANY = "any"
BOUND_KINDS = (LOWER, UPPER, EXACT)

# Both ways the set-level predicates count their members
STREAM_EXISTENTIAL = "stream-existential"
COMPONENT_ACTIVE = "component-active"
COUNTING_MODES = (STREAM_EXISTENTIAL, COMPONENT_ACTIVE)


def _outputs(trace: Trace, c: str) -> Dict[str, TimedStream]:
    """Out(C): the output streams of `c`, exit point included."""
    return trace.outputs(c)


def _output(trace: Trace, c: str, x: str) -> TimedStream:
    outputs = _outputs(trace, c)
    if x not in outputs:
        raise UnknownStreamError(
            f"{x!r} is not an output of {c!r}; outputs are {sorted(outputs)}."
        )
    return outputs[x]


def _compare(kind: str, count: int, rb: int) -> bool:
    if kind == LOWER:
        return count >= rb
    if kind == UPPER:
        return count <= rb
    if kind == EXACT:
        return count == rb
    raise ValueError(
        f"`kind` expects one of {', '.join(BOUND_KINDS)}, but got {kind!r}."
    )


def _check_bound(rb: int, limit: int, what: str) -> None:
    if not isinstance(rb, int) or isinstance(rb, bool):
        raise TypeError(f"`rb` expects an int, but got {type(rb).__name__}.")
    if not 0 <= rb <= limit:
        raise ValueError(
            f"`rb` expects a value in [0, {limit}] ({what}), but got {rb}."
        )


def active_on(trace: Trace, c: str, t: int, x: str) -> bool:
    """
    True iff output `x` of component `c` is nonempty at tick `t`.

    Raises:
        UnknownStreamError: If `c` is unknown or `x` is not one of its outputs.
        HorizonExceededError: If `t` lies outside the trace.
    """
    return bool(interval_at(_output(trace, c, x), t))


def active_only_on(trace: Trace, c: str, t: int, x: str) -> bool:
    """True iff `x` is the one nonempty output of `c` at tick `t`."""
    if not active_on(trace, c, t, x):
        return False
    return not any(
        interval_at(s, t) for name, s in _outputs(trace, c).items() if name != x
    )


def active_count(trace: Trace, c: str, t: int) -> int:
    """Number of outputs of `c` that are nonempty at tick `t`."""
    return sum(1 for s in _outputs(trace, c).values() if interval_at(s, t))


def active(trace: Trace, c: str, t: int) -> bool:
    """True iff at least one output of `c` is nonempty at tick `t`."""
    return any(interval_at(s, t) for s in _outputs(trace, c).values())


def active_bounded(trace: Trace, c: str, t: int, kind: str, rb: int) -> bool:
    """
    Compare the number of nonempty outputs of `c` at tick `t` with `rb`.

    Args:
        kind (str): ``"lower"`` (at least `rb`), ``"upper"`` (at most `rb`) or
            ``"exact"`` (exactly `rb`).
        rb (int): Bound, between 0 and the number of outputs of `c`.

    Example::

        >>> active_bounded(trace, "P", 4, "exact", 1)
        True
    """
    _check_bound(rb, len(_outputs(trace, c)), f"outputs of {c!r}")
    return _compare(kind, active_count(trace, c, t), rb)


def _member_active(trace: Trace, c: str, t: int, counting: str) -> bool:
    if counting == STREAM_EXISTENTIAL:
        return any(active_on(trace, c, t, x) for x in _outputs(trace, c))
    if counting == COMPONENT_ACTIVE:
        return active(trace, c, t)
    raise ValueError(
        f"`counting` expects one of {', '.join(COUNTING_MODES)}, "
        f"but got {counting!r}."
    )


def active_set(
    trace: Trace,
    s: Iterable[str],
    t: int,
    kind: str = ANY,
    rb: int = 1,
    counting: str = STREAM_EXISTENTIAL,
) -> bool:
    """
    Activity of a set of components at tick `t`.

    With ``kind="any"`` the predicate holds iff some member is active. The
    bounded kinds count the active members and compare the count with `rb`.
    A member counts either because one of its output streams is nonempty
    (``"stream-existential"``) or because the component is active
    (``"component-active"``). Both readings are kept apart so that they can
    be compared on the same trace.

    Raises:
        ValueError: If `s` is empty or `rb` exceeds its size.
    """
    members = tuple(dict.fromkeys(s))
    if not members:
        raise ValueError("`s` expects at least one component, but got none.")
    if kind == ANY:
        return any(active(trace, c, t) for c in members)
    _check_bound(rb, len(members), "size of the set")
    count = sum(1 for c in members if _member_active(trace, c, t, counting))
    return _compare(kind, count, rb)


def disjoint_outputs_check(trace: Trace, c: str) -> bool:
    """
    True iff exactly one output of `c` is nonempty at every tick.

    Exactly one nonempty output per tick makes the outputs of `c` disjoint;
    the converse does not hold, since a silent tick breaks the first property
    but not the second.

    Raises:
        AssertionError: If the first property holds and the outputs are not
            disjoint.
    """
    exact_one = all(
        active_bounded(trace, c, t, EXACT, 1) for t in range(trace.horizon)
    )
    streams = list(_outputs(trace, c).values())
    if exact_one and streams:
        assert disjoint(streams), f"outputs of {c!r} are not disjoint"
    return exact_one


def activity_profile(trace: Trace, c: str) -> Tuple[int, ...]:
    """Number of nonempty outputs of `c` at every tick."""
    return tuple(active_count(trace, c, t) for t in range(trace.horizon))
