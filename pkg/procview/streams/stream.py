from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Tuple, Union

from procview.errors import HorizonExceededError, HorizonMismatchError
from procview.streams.interval import EMPTY, TimeInterval
from procview.streams.message import Message, MsgType


@dataclass(frozen=True)
class TimedStream:
    """
    A finite prefix of a timed stream over an explicit horizon.

    The stream holds one :class:`TimeInterval` per tick ``t`` in
    ``[0, horizon)``. Reading at or past the horizon is an error, never a
    silent empty interval.

    Attributes:
        channel_type (MsgType): Type every message of the stream must match.
        intervals (Tuple[TimeInterval, ...]): One interval per tick.
    """

    channel_type: MsgType
    intervals: Tuple[TimeInterval, ...]

    def __post_init__(self):
        if not isinstance(self.intervals, tuple):
            object.__setattr__(self, "intervals", tuple(self.intervals))
        for t, interval in enumerate(self.intervals):
            if not isinstance(interval, TimeInterval):
                raise TypeError(
                    f"Interval {t} must be a TimeInterval, "
                    f"but got {type(interval).__name__}."
                )
            for m in interval:
                self.channel_type.check(m, where=f"tick {t}")

    @classmethod
    def empty(cls, channel_type: MsgType, horizon: int) -> "TimedStream":
        if horizon < 0:
            raise ValueError(f"`horizon` must be non-negative, but got {horizon}.")
        return cls(channel_type, (EMPTY,) * horizon)

    @classmethod
    def from_ticks(
        cls,
        channel_type: MsgType,
        horizon: int,
        ticks: Mapping[int, Union[TimeInterval, Sequence]],
    ) -> "TimedStream":
        """
        Build a stream that is empty except at the given ticks.

        Args:
            channel_type: Type of the channel.
            horizon: Number of ticks.
            ticks: Map from tick to an interval, or to a sequence of messages or
                plain values (coerced with :meth:`Message.coerce`).

        Raises:
            HorizonExceededError: If a tick lies outside ``[0, horizon)``.
        """
        intervals = [EMPTY] * horizon
        for t, content in ticks.items():
            if not 0 <= t < horizon:
                raise HorizonExceededError(
                    f"Tick {t} lies outside the horizon [0, {horizon})."
                )
            if not isinstance(content, TimeInterval):
                content = TimeInterval.of(*content)
            intervals[t] = content
        return cls(channel_type, tuple(intervals))

    @property
    def horizon(self) -> int:
        return len(self.intervals)

    def interval_at(self, t: int) -> TimeInterval:
        return interval_at(self, t)

    def __iter__(self) -> Iterator[TimeInterval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def nonempty_ticks(self) -> Tuple[int, ...]:
        """Ticks at which the stream carries at least one message."""
        return tuple(t for t, i in enumerate(self.intervals) if i)

    def messages(self) -> Tuple[Message, ...]:
        """All messages of the stream in time order (its untimed view)."""
        return tuple(m for i in self.intervals for m in i)


def interval_at(s: TimedStream, t: int) -> TimeInterval:
    """
    Return the ``t``-th interval of ``s`` (written s↓t).

    Raises:
        HorizonExceededError: If ``t`` is negative or not below the horizon.
    """
    if not 0 <= t < s.horizon:
        raise HorizonExceededError(
            f"Tick {t} lies outside the horizon [0, {s.horizon})."
        )
    return s.intervals[t]


def msg_bound(n: int, s: TimedStream) -> bool:
    """Return True iff every interval of ``s`` holds at most ``n`` messages."""
    if n < 0:
        raise ValueError(f"`n` must be non-negative, but got {n}.")
    return all(len(i) <= n for i in s.intervals)


def common_horizon(streams: Iterable[TimedStream]) -> int:
    """
    Return the horizon shared by all streams.

    Raises:
        ValueError: If no stream is given.
        HorizonMismatchError: If horizons differ.
    """
    horizons = {s.horizon for s in streams}
    if not horizons:
        raise ValueError("At least one stream is required.")
    if len(horizons) > 1:
        raise HorizonMismatchError(
            f"Streams have different horizons: {sorted(horizons)}."
        )
    return horizons.pop()


def disjoint(streams: Iterable[TimedStream]) -> bool:
    """
    Return True iff at every tick at most one of the streams is nonempty.

    Raises:
        ValueError: If no stream is given.
        HorizonMismatchError: If the streams do not share a horizon.
    """
    streams = list(streams)
    horizon = common_horizon(streams)
    for t in range(horizon):
        if sum(1 for s in streams if s.intervals[t]) > 1:
            return False
    return True
