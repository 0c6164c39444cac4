# procview/streams/__init__.py

from .interval import EMPTY, TimeInterval, concat, empty_interval, ft, singleton
from .message import BOOL, EV, EVENT, INT, Message, MsgKind, MsgType, enum_type
from .stream import TimedStream, common_horizon, disjoint, interval_at, msg_bound

__all__ = [
    "BOOL",
    "EMPTY",
    "EV",
    "EVENT",
    "INT",
    "Message",
    "MsgKind",
    "MsgType",
    "TimeInterval",
    "TimedStream",
    "common_horizon",
    "concat",
    "disjoint",
    "empty_interval",
    "enum_type",
    "ft",
    "interval_at",
    "msg_bound",
    "singleton",
]

# Please keep this list sorted
assert __all__ == sorted(__all__)
