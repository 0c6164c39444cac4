from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Tuple, Union

from procview.errors import ChannelTypeError


class MsgKind(Enum):
    """Kinds of payload a channel can carry."""

    EVENT = "Event"
    INT = "Int"
    BOOL = "Bool"
    ENUM = "Enum"


@dataclass(frozen=True)
class MsgType:
    """
    Message-type tag of a channel, buffer or local variable.

    Enumerated types carry their symbols in declaration order. Two enumerated
    types are equal iff they declare the same symbols in the same order.

    Attributes:
        kind (MsgKind): The payload kind.
        symbols (Tuple[str, ...]): Symbols of an enumerated type, empty otherwise.
    """

    kind: MsgKind
    symbols: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind is MsgKind.ENUM and not self.symbols:
            raise ValueError("An enumerated type needs at least one symbol.")
        if self.kind is not MsgKind.ENUM and self.symbols:
            raise ValueError(f"Type {self.kind.value} cannot declare symbols.")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"Duplicate symbols in enumerated type {self.symbols}.")

    @property
    def name(self) -> str:
        if self.kind is MsgKind.ENUM:
            return "{" + ", ".join(self.symbols) + "}"
        return self.kind.value

    def accepts(self, message: "Message") -> bool:
        """Return True if `message` is a value of this type."""
        if message.kind is not self.kind:
            return False
        if self.kind is MsgKind.ENUM:
            return message.value in self.symbols
        return True

    def check(self, message: "Message", where: str = "channel") -> None:
        """Raise :class:`ChannelTypeError` if `message` is not of this type."""
        if not self.accepts(message):
            raise ChannelTypeError(
                f"Message {message} does not match the type {self.name} of {where}."
            )

    def default(self) -> "Message":
        """Return the canonical initial value of this type."""
        if self.kind is MsgKind.EVENT:
            return EV
        if self.kind is MsgKind.INT:
            return Message.of_int(0)
        if self.kind is MsgKind.BOOL:
            return Message.of_bool(False)
        return Message.of_symbol(self.symbols[0])

    def __str__(self):
        return self.name


EVENT = MsgType(MsgKind.EVENT)
INT = MsgType(MsgKind.INT)
BOOL = MsgType(MsgKind.BOOL)


def enum_type(*symbols: str) -> MsgType:
    """Build an enumerated message type from its symbols."""
    return MsgType(MsgKind.ENUM, tuple(symbols))


@dataclass(frozen=True)
class Message:
    """
    A single message on a timed stream.

    Event messages carry no payload, so any two of them are equal. Ints and
    Bools are kept apart by their kind even though ``True == 1`` in Python.

    Attributes:
        kind (MsgKind): The payload kind.
        value (int | bool | str | None): The payload; ``None`` for events and
            the symbol name for enumerated values.
    """

    kind: MsgKind
    value: Optional[Union[int, bool, str]] = field(default=None)

    def __post_init__(self):
        expected = {
            MsgKind.EVENT: type(None),
            MsgKind.INT: int,
            MsgKind.BOOL: bool,
            MsgKind.ENUM: str,
        }[self.kind]
        # bool is a subclass of int, so Ints reject it explicitly
        if not isinstance(self.value, expected) or (
            self.kind is MsgKind.INT and isinstance(self.value, bool)
        ):
            raise TypeError(
                f"A {self.kind.value} message expects a "
                f"{expected.__name__} payload, but got {type(self.value).__name__}."
            )

    @classmethod
    def event(cls) -> "Message":
        return EV

    @classmethod
    def of_int(cls, value: int) -> "Message":
        return cls(MsgKind.INT, value)

    @classmethod
    def of_bool(cls, value: bool) -> "Message":
        return cls(MsgKind.BOOL, value)

    @classmethod
    def of_symbol(cls, symbol: str) -> "Message":
        return cls(MsgKind.ENUM, symbol)

    @classmethod
    def coerce(cls, value: Any) -> "Message":
        """
        Build a message from a plain Python value.

        ``"ev"`` or ``None`` give the event, booleans give Bools, integers give
        Ints and any other string gives an enumerated symbol.
        """
        if isinstance(value, Message):
            return value
        if value is None or value == "ev":
            return EV
        if isinstance(value, bool):
            return cls.of_bool(value)
        if isinstance(value, int):
            return cls.of_int(value)
        if isinstance(value, str):
            return cls.of_symbol(value)
        raise TypeError(
            f"Cannot build a message from {type(value).__name__} value {value!r}."
        )

    def to_json(self) -> Union[int, bool, str]:
        """Encode as a JSON scalar: events as ``"ev"``, symbols as ``"#name"``."""
        if self.kind is MsgKind.EVENT:
            return "ev"
        if self.kind is MsgKind.ENUM:
            return f"#{self.value}"
        return self.value

    @classmethod
    def from_json(cls, value: Union[int, bool, str]) -> "Message":
        if value == "ev":
            return EV
        if isinstance(value, str) and value.startswith("#"):
            return cls.of_symbol(value[1:])
        return cls.coerce(value)

    def __str__(self):
        if self.kind is MsgKind.EVENT:
            return "√"
        if self.kind is MsgKind.BOOL:
            return "true" if self.value else "false"
        if self.kind is MsgKind.ENUM:
            return f"#{self.value}"
        return str(self.value)


EV = Message(MsgKind.EVENT)
