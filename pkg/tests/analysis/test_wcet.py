from dataclasses import replace

import pytest

from procview.analysis import (
    MEASURED,
    activation_latency,
    connector_costs,
    declared_bounds,
    default_input_space,
    measure_wcet,
    measured_bounds,
    wcet,
)
from procview.composition import (
    Alt,
    ChooserPolicy,
    Elem,
    LoopAuto,
    LoopNonAuto,
    Par,
    Seq,
    compile,
    iter_paths,
)
from procview.errors import (
    MeasurementInconclusiveError,
    MissingBoundError,
    NoEntryPointError,
)
from procview.simulation import run
from tests.utils import FIXED, echo_spec, fixed

HORIZON = 60


def random_expr(rng, depth, loops=False):
    """
    Seq/Par/Alt tree of at most `depth` operator levels over fixed leaves,
    with manual loops and zero-duration leaves when `loops` is set.
    """
    if depth == 0 or rng.random() < 0.3:
        return fixed(rng.randint(0 if loops else 1, 6))
    ops = [Seq, Par, Alt, LoopNonAuto] if loops else [Seq, Par, Alt]
    op = rng.choice(ops)
    if op is LoopNonAuto:
        return LoopNonAuto(random_expr(rng, depth - 1, loops))
    return op(random_expr(rng, depth - 1, loops), random_expr(rng, depth - 1, loops))


def bound_of(expr, **kwargs):
    return wcet(expr, declared_bounds(expr), **kwargs).bound


class TestWcet:
    """
    Tests for the compositional WCET bound.
    """

    def test_sequence(self):
        report = wcet(Seq(fixed(3), fixed(5)), {"Fixed(d=3)": 3, "Fixed(d=5)": 5})
        assert report.bound == 8
        assert [c.label for c in report.derivation.children] == [
            "Fixed(d=3)",
            "Fixed(d=5)",
        ]
        assert str(report).startswith("wcet = 8 ticks (connector cost zero")

    def test_parallel_and_alternative(self):
        assert bound_of(Par(fixed(3), fixed(5))) == 5
        assert bound_of(Alt(fixed(3), fixed(5))) == 5
        assert bound_of(Seq(Par(fixed(1), fixed(4)), Alt(fixed(2), fixed(6)))) == 10

    def test_loops_take_the_bound_of_their_body(self):
        assert bound_of(LoopNonAuto(Seq(fixed(2), fixed(3)))) == 5
        report = wcet(LoopAuto(fixed(3), 2), declared_bounds(fixed(3)))
        assert report.bound == 3
        assert report.notes == ("loop(auto 2): restarts every 5 ticks at most",)

    def test_bounds_by_process_name(self):
        expr = Seq(fixed(3), Elem(echo_spec()))
        assert wcet(expr, {"Fixed": 4, "Echo": 2}).bound == 6
        # a label entry takes precedence over the name
        assert wcet(expr, {"Fixed(d=3)": 3, "Fixed": 4, "Echo": 2}).bound == 5

    def test_missing_bound(self):
        with pytest.raises(MissingBoundError, match="Echo"):
            wcet(Seq(fixed(3), Elem(echo_spec())), {"Fixed": 3})
        with pytest.raises(MissingBoundError, match="declares no WCET"):
            declared_bounds(Elem(replace(FIXED, declared_wcet=None)))

    def test_measured_mode(self):
        costs = {"&": 2, "@": 1, "+": 1, "Delay": 1}
        measured = dict(connector_cost_mode=MEASURED, connector_costs=costs)
        assert bound_of(Par(fixed(3), fixed(5)), **measured) == 7
        assert bound_of(Alt(fixed(3), fixed(5)), **measured) == 7
        # unspecified costs default to zero
        measured["connector_costs"] = {"&": 2}
        assert bound_of(LoopNonAuto(fixed(3)), **measured) == 3

    def test_measured_mode_with_measured_costs(self):
        report = wcet(LoopNonAuto(fixed(3)), {"Fixed": 3}, MEASURED)
        assert report.connector_costs == {"&": 0, "@": 0, "+": 0, "Delay": 1}
        assert report.bound == 4

    def test_invalid_mode(self):
        with pytest.raises(ValueError, match="connector_cost_mode"):
            wcet(fixed(1), {"Fixed": 1}, "pessimistic")

    def test_fixed_chooser_note(self):
        expr = Alt(fixed(2), fixed(5), ChooserPolicy.fixed("left"))
        report = wcet(expr, declared_bounds(expr))
        assert report.bound == 5
        assert report.notes == (
            "(+)[left]: fixed chooser takes the left branch (2), slack 3",
        )

    def test_bound_below_one_tick_is_raised(self):
        report = wcet(Seq(fixed(0), fixed(2)), {"Fixed(d=0)": 0, "Fixed(d=2)": 2})
        assert report.bound == 3
        assert report.notes == ("Fixed(d=0): declared bound 0 raised to 1",)
        assert bound_of(LoopNonAuto(fixed(0)), connector_cost_mode=MEASURED) == 2

    def test_derivation_lines(self):
        report = wcet(Par(fixed(1), fixed(2)), {"Fixed": 2})
        assert report.derivation.lines() == [
            "|| = 2  [wcet(P||Q) = max{wcet(P), wcet(Q)} + wcet(&)]",
            "  Fixed(d=1) = 2  [leaf]",
            "  Fixed(d=2) = 2  [leaf]",
        ]


class TestMeasure:
    """
    Tests for WCET measurement by simulation.
    """

    def test_connector_costs(self):
        assert connector_costs() == {"&": 0, "@": 0, "+": 0, "Delay": 1}

    def test_elementary(self):
        assert measure_wcet(fixed(4)) == 4
        assert measure_wcet(echo_spec()) == 2
        # a zero-duration process still needs one tick
        assert measure_wcet(fixed(0)) == 1

    def test_sequence_and_parallel_match_the_bound(self):
        for expr in (Seq(fixed(3), fixed(5)), Par(fixed(3), fixed(5))):
            assert measure_wcet(expr) == bound_of(expr)

    def test_alternative_with_fixed_chooser(self):
        slow = Alt(fixed(2), fixed(5), ChooserPolicy.fixed("right"))
        assert measure_wcet(slow) == bound_of(slow) == 5
        fast = Alt(fixed(2), fixed(5), ChooserPolicy.fixed("left"))
        assert measure_wcet(fast) == 2

    def test_non_autonomous_loop_pays_for_its_delay(self):
        expr = LoopNonAuto(fixed(3))
        assert measure_wcet(expr) == 4
        assert measure_wcet(expr) == wcet(expr, {"Fixed": 3}, MEASURED).bound

    def test_measured_never_exceeds_bound(self, rng):
        """
        Test that the measured latency of random compositions of fixed-duration
        processes stays within the zero-cost bound, and reaches it when no
        alternative is involved.
        """
        for _ in range(150):
            expr = random_expr(rng, 3)
            measured = measure_wcet(expr, horizon=HORIZON)
            bound = bound_of(expr)
            assert measured <= bound, expr
            if not any(isinstance(node, Alt) for _, node in iter_paths(expr)):
                assert measured == bound, expr

    def test_measured_loops_stay_within_measured_bound(self, rng):
        """
        Test that random compositions with manual loops and zero-duration
        leaves never take longer than their bound once the Delay of every loop
        is paid for.
        """
        costs = connector_costs()
        for _ in range(150):
            expr = random_expr(rng, 3, loops=True)
            bound = bound_of(expr, connector_cost_mode=MEASURED, connector_costs=costs)
            assert measure_wcet(expr, horizon=HORIZON) <= bound, expr

    def test_measured_bounds(self):
        expr = Seq(fixed(3), Par(fixed(3), fixed(1)))
        assert measured_bounds(expr) == {"Fixed(d=3)": 3, "Fixed(d=1)": 1}

    def test_default_input_space(self):
        network = compile(Elem(echo_spec()))
        space = list(default_input_space(network))
        assert len(space) == 4
        assert space[0] == {"entry": {0: ["ev"]}, "Echo.a": {0: [-1]}}
        assert len(list(default_input_space(network, limit=2))) == 2

    def test_progress_callback(self):
        done = []
        network = compile(Elem(echo_spec()))
        measure_wcet(
            Elem(echo_spec()),
            input_space=default_input_space(network),
            progress=done.append,
        )
        assert done == [1, 2, 3, 4]

    def test_activation_latency(self):
        network = compile(Seq(fixed(2), fixed(2)))
        assert activation_latency(run(network, horizon=10), network) is None

    def test_autonomous_loop_cannot_be_measured(self):
        with pytest.raises(NoEntryPointError):
            measure_wcet(LoopAuto(fixed(3)))
        with pytest.raises(NoEntryPointError):
            next(default_input_space(compile(LoopAuto(fixed(3)))))

    def test_inconclusive(self):
        with pytest.raises(MeasurementInconclusiveError, match="no exit"):
            measure_wcet(fixed(10), horizon=5)
        with pytest.raises(MeasurementInconclusiveError, match="empty"):
            measure_wcet(fixed(1), input_space=[])
