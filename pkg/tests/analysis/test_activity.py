import pytest

from procview.analysis import (
    COMPONENT_ACTIVE,
    EXACT,
    LOWER,
    STREAM_EXISTENTIAL,
    UPPER,
    active,
    active_bounded,
    active_count,
    active_on,
    active_only_on,
    active_set,
    activity_profile,
    disjoint_outputs_check,
)
from procview.composition import Alt
from procview.errors import HorizonExceededError, UnknownStreamError
from procview.simulation import ComponentPorts, Trace
from procview.streams import disjoint
from tests.utils import event_stream, fixed, random_trace, simulate


@pytest.fixture
def toggle_trace():
    """
    Fixture for a component ``T`` with outputs ``a`` and ``b``: ``a`` fires on
    even ticks, ``b`` on odd ticks and both at tick 5.
    """
    horizon = 6
    return Trace(
        horizon=horizon,
        channels={
            "T.a": event_stream(horizon, [0, 2, 4, 5]),
            "T.b": event_stream(horizon, [1, 3, 5]),
            "U.z": event_stream(horizon, [2]),
        },
        components={
            "T": ComponentPorts("process", {}, {"a": "T.a", "b": "T.b"}),
            "U": ComponentPorts("process", {}, {"z": "U.z"}),
        },
    )


class TestComponentActivity:
    """
    Tests for activity predicates over the outputs of one component.
    """

    def test_active_on(self, toggle_trace):
        assert active_on(toggle_trace, "T", 0, "a")
        assert not active_on(toggle_trace, "T", 0, "b")

    def test_active_only_on(self, toggle_trace):
        assert active_only_on(toggle_trace, "T", 0, "a")
        assert not active_only_on(toggle_trace, "T", 5, "a")
        assert not active_only_on(toggle_trace, "T", 1, "a")

    def test_counts_and_profile(self, toggle_trace):
        assert activity_profile(toggle_trace, "T") == (1, 1, 1, 1, 1, 2)
        assert activity_profile(toggle_trace, "U") == (0, 0, 1, 0, 0, 0)
        assert active_count(toggle_trace, "T", 5) == 2
        assert not active(toggle_trace, "U", 0)

    def test_bounded(self, toggle_trace):
        assert active_bounded(toggle_trace, "T", 5, LOWER, 2)
        assert active_bounded(toggle_trace, "T", 4, UPPER, 1)
        assert active_bounded(toggle_trace, "T", 4, EXACT, 1)
        assert not active_bounded(toggle_trace, "T", 5, EXACT, 1)
        # zero is always a valid lower bound
        assert active_bounded(toggle_trace, "U", 0, LOWER, 0)

    def test_bounded_rejects_invalid_bounds(self, toggle_trace):
        with pytest.raises(ValueError, match=r"\[0, 2\]"):
            active_bounded(toggle_trace, "T", 0, LOWER, 3)
        with pytest.raises(TypeError):
            active_bounded(toggle_trace, "T", 0, LOWER, True)
        with pytest.raises(ValueError, match="kind"):
            active_bounded(toggle_trace, "T", 0, "most", 1)

    def test_disjoint_outputs_check(self, toggle_trace):
        assert not disjoint_outputs_check(toggle_trace, "T")
        assert not disjoint_outputs_check(toggle_trace, "U")
        single = Trace(
            horizon=3,
            channels={"S.a": event_stream(3, [0, 2]), "S.b": event_stream(3, [1])},
            components={"S": ComponentPorts("at", {}, {"a": "S.a", "b": "S.b"})},
        )
        assert disjoint_outputs_check(single, "S")

    def test_unknown_names(self, toggle_trace):
        with pytest.raises(UnknownStreamError, match="not an output"):
            active_on(toggle_trace, "T", 0, "c")
        with pytest.raises(UnknownStreamError):
            active(toggle_trace, "V", 0)
        with pytest.raises(HorizonExceededError):
            active(toggle_trace, "T", 6)

    def test_on_simulated_alternative(self):
        trace = simulate(Alt(fixed(2), fixed(3)), {"entry": {0: ["ev"], 5: ["ev"]}})
        assert active_only_on(trace, "at", 0, "o_left")
        assert active_only_on(trace, "at", 5, "o_right")
        assert active_on(trace, "plus", 2, "z")
        assert activity_profile(trace, "at").count(1) == 2
        assert not disjoint_outputs_check(trace, "at")


class TestSetActivity:
    """
    Tests for activity predicates over sets of components.
    """

    def test_any(self, toggle_trace):
        assert active_set(toggle_trace, ["T", "U"], 0)
        assert not active_set(toggle_trace, ["U"], 1)

    def test_bounded_counts_members(self, toggle_trace):
        assert active_set(toggle_trace, ["T", "U"], 2, EXACT, 2)
        assert active_set(toggle_trace, ["T", "U"], 5, EXACT, 1)
        assert active_set(toggle_trace, ["T", "U"], 5, UPPER, 1, COMPONENT_ACTIVE)

    def test_duplicates_count_once(self, toggle_trace):
        assert active_set(toggle_trace, ["T", "T"], 0, EXACT, 1)

    def test_invalid_sets(self, toggle_trace):
        with pytest.raises(ValueError, match="at least one"):
            active_set(toggle_trace, [], 0)
        with pytest.raises(ValueError):
            active_set(toggle_trace, ["T"], 0, LOWER, 2)
        with pytest.raises(ValueError, match="counting"):
            active_set(toggle_trace, ["T"], 0, LOWER, 1, counting="some")


class TestActivityAlgebra:
    """
    Tests for the relations between the predicates on random traces.
    """

    def test_relations(self, rng):
        for _ in range(1000):
            trace = random_trace(rng, horizon=rng.randint(1, 12))
            names = list(trace.components)
            for t in range(trace.horizon):
                for c in names:
                    outputs = trace.output_ports(c)
                    count = active_count(trace, c, t)
                    assert active(trace, c, t) == active_bounded(trace, c, t, LOWER, 1)
                    assert count == sum(active_on(trace, c, t, x) for x in outputs)
                    for rb in range(1, len(outputs) + 1):
                        if active_bounded(trace, c, t, LOWER, rb):
                            assert active_bounded(trace, c, t, LOWER, rb - 1)
                        if active_bounded(trace, c, t, UPPER, rb - 1):
                            assert active_bounded(trace, c, t, UPPER, rb)
                    for x in outputs:
                        if active_only_on(trace, c, t, x):
                            assert active_bounded(trace, c, t, EXACT, 1)
                assert active_set(trace, names, t) == active_set(
                    trace, names, t, LOWER, 1
                )
                for kind in (LOWER, UPPER, EXACT):
                    for rb in range(len(names) + 1):
                        assert active_set(
                            trace, names, t, kind, rb, STREAM_EXISTENTIAL
                        ) == active_set(trace, names, t, kind, rb, COMPONENT_ACTIVE)
            for c in names:
                if disjoint_outputs_check(trace, c):
                    assert disjoint(list(trace.outputs(c).values()))
