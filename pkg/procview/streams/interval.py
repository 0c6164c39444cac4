from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

from procview.errors import NoFirstElementError
from procview.streams.message import Message


@dataclass(frozen=True)
class TimeInterval:
    """
    The finite, ordered sequence of messages a channel carries during one tick.

    Intervals are immutable; their truth value is their non-emptiness, so
    ``if interval:`` reads as "the stream is nonempty at this tick".

    Attributes:
        messages (Tuple[Message, ...]): Messages in arrival order.
    """

    messages: Tuple[Message, ...] = ()

    def __post_init__(self):
        if not isinstance(self.messages, tuple):
            object.__setattr__(self, "messages", tuple(self.messages))
        for m in self.messages:
            if not isinstance(m, Message):
                raise TypeError(
                    f"All elements in `messages` must be of type Message, "
                    f"but got {type(m).__name__}."
                )

    @classmethod
    def of(cls, *values) -> "TimeInterval":
        """Build an interval from messages or plain values (see Message.coerce)."""
        return cls(tuple(Message.coerce(v) for v in values))

    def __len__(self) -> int:
        return len(self.messages)

    def __iter__(self) -> Iterator[Message]:
        return iter(self.messages)

    def __bool__(self) -> bool:
        return bool(self.messages)

    def is_empty(self) -> bool:
        return not self.messages

    def __str__(self):
        return "⟨" + ",".join(str(m) for m in self.messages) + "⟩"


EMPTY = TimeInterval()


def empty_interval() -> TimeInterval:
    """Return the empty interval ⟨⟩."""
    return EMPTY


def singleton(m: Message) -> TimeInterval:
    """Return the one-element interval ⟨m⟩."""
    if not isinstance(m, Message):
        raise TypeError(f"`m` expects a Message, but got {type(m).__name__}.")
    return TimeInterval((m,))


def ft(i: TimeInterval) -> Message:
    """
    Return the first message of an interval.

    Raises:
        NoFirstElementError: If the interval is empty.
    """
    if not i.messages:
        raise NoFirstElementError("ft is undefined on the empty interval ⟨⟩.")
    return i.messages[0]


def concat(intervals: Iterable[TimeInterval]) -> TimeInterval:
    """Concatenate intervals, preserving message order."""
    return TimeInterval(tuple(m for i in intervals for m in i.messages))
