import pytest

from procview.errors import (
    ChannelTypeError,
    HorizonExceededError,
    HorizonMismatchError,
    NoFirstElementError,
)
from procview.streams import (
    BOOL,
    EMPTY,
    EV,
    EVENT,
    INT,
    Message,
    MsgKind,
    TimedStream,
    TimeInterval,
    common_horizon,
    concat,
    disjoint,
    empty_interval,
    enum_type,
    ft,
    interval_at,
    msg_bound,
    singleton,
)
from tests.utils import event_stream


class TestMessage:
    """
    Tests for messages and their types.
    """

    def test_coerce_plain_values(self):
        assert Message.coerce("ev") is EV
        assert Message.coerce(None) is EV
        assert Message.coerce(3) == Message.of_int(3)
        assert Message.coerce(True) == Message.of_bool(True)
        assert Message.coerce("red") == Message.of_symbol("red")

    def test_bool_and_int_are_distinct(self):
        assert Message.of_bool(True) != Message.of_int(1)
        with pytest.raises(TypeError, match="expects a int payload"):
            Message(MsgKind.INT, True)

    def test_json_encoding(self):
        assert EV.to_json() == "ev"
        assert Message.of_symbol("red").to_json() == "#red"
        assert Message.from_json("#red") == Message.of_symbol("red")
        assert Message.from_json(-4) == Message.of_int(-4)
        assert Message.from_json(False) == Message.of_bool(False)

    def test_str(self):
        assert str(EV) == "√"
        assert str(Message.of_symbol("go")) == "#go"
        assert str(Message.of_bool(False)) == "false"

    def test_type_names(self):
        assert INT.name == "Int"
        assert BOOL.name == "Bool"
        assert EVENT.name == "Event"
        assert enum_type("a", "b").name == "{a, b}"

    def test_enum_accepts_declared_symbols_only(self):
        colors = enum_type("red", "green")
        assert colors.accepts(Message.of_symbol("red"))
        assert not colors.accepts(Message.of_symbol("blue"))
        with pytest.raises(ChannelTypeError):
            colors.check(Message.of_symbol("blue"))

    def test_invalid_enum_types(self):
        with pytest.raises(ValueError):
            enum_type()
        with pytest.raises(ValueError):
            enum_type("a", "a")

    def test_defaults(self):
        assert EVENT.default() is EV
        assert INT.default() == Message.of_int(0)
        assert enum_type("idle", "busy").default() == Message.of_symbol("idle")


class TestTimeInterval:
    """
    Tests for intervals and the helpers ft, singleton and concat.
    """

    def test_empty_interval_is_falsy(self):
        assert not empty_interval()
        assert empty_interval() == EMPTY
        assert EMPTY.is_empty()
        assert str(EMPTY) == "⟨⟩"

    def test_singleton(self):
        interval = singleton(Message.of_int(5))
        assert len(interval) == 1
        assert ft(interval) == Message.of_int(5)
        with pytest.raises(TypeError):
            singleton(5)

    def test_ft_of_empty_interval_raises(self):
        with pytest.raises(NoFirstElementError):
            ft(EMPTY)

    def test_ft_returns_first_message(self):
        assert ft(TimeInterval.of(3, 1, 2)) == Message.of_int(3)

    def test_concat_preserves_order(self):
        joined = concat([TimeInterval.of(1), EMPTY, TimeInterval.of(2, 3)])
        assert joined == TimeInterval.of(1, 2, 3)

    def test_rejects_non_messages(self):
        with pytest.raises(TypeError, match="must be of type Message"):
            TimeInterval((1, 2))


class TestTimedStream:
    """
    Tests for timed streams over an explicit horizon.
    """

    def test_from_ticks(self):
        s = TimedStream.from_ticks(INT, 5, {1: [4], 3: [5, 6]})
        assert s.horizon == 5
        assert s.nonempty_ticks() == (1, 3)
        assert s.messages() == tuple(Message.of_int(v) for v in (4, 5, 6))
        assert interval_at(s, 0) == EMPTY

    def test_interval_at_beyond_horizon_raises(self):
        s = TimedStream.empty(EVENT, 4)
        assert s.interval_at(3) == EMPTY
        with pytest.raises(HorizonExceededError):
            interval_at(s, 4)
        with pytest.raises(HorizonExceededError):
            interval_at(s, -1)

    def test_from_ticks_outside_horizon_raises(self):
        with pytest.raises(HorizonExceededError):
            TimedStream.from_ticks(EVENT, 3, {3: ["ev"]})

    def test_type_is_checked_per_message(self):
        with pytest.raises(ChannelTypeError, match="tick 1"):
            TimedStream.from_ticks(INT, 3, {1: [True]})

    def test_msg_bound(self):
        s = TimedStream.from_ticks(EVENT, 4, {0: ["ev"], 2: ["ev", "ev"]})
        assert msg_bound(2, s)
        assert not msg_bound(1, s)
        assert msg_bound(0, TimedStream.empty(EVENT, 4))
        with pytest.raises(ValueError):
            msg_bound(-1, s)

    def test_common_horizon(self):
        assert common_horizon([event_stream(5, [1]), event_stream(5, [])]) == 5
        with pytest.raises(HorizonMismatchError):
            common_horizon([event_stream(5, [1]), event_stream(6, [])])
        with pytest.raises(ValueError):
            common_horizon([])

    def test_disjoint(self):
        assert disjoint([event_stream(6, [0, 2]), event_stream(6, [1, 3])])
        assert not disjoint([event_stream(6, [0, 2]), event_stream(6, [2])])
        # silent streams are trivially disjoint
        assert disjoint([event_stream(6, []), event_stream(6, [])])

    def test_disjoint_matches_pairwise_scan(self, rng):
        """
        Test disjoint() against a direct check of every pair at every tick.
        """
        for _ in range(200):
            streams = [
                event_stream(20, [t for t in range(20) if rng.random() < 0.2])
                for _ in range(3)
            ]
            expected = all(
                not (streams[i].intervals[t] and streams[j].intervals[t])
                for t in range(20)
                for i in range(3)
                for j in range(3)
                if i != j
            )
            assert disjoint(streams) == expected
