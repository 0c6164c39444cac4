import pytest

from procview.composition import (
    LoopAuto,
    LoopNonAuto,
    Network,
    Par,
    PlusConnector,
    PortRef,
    Seq,
    compile,
)
from procview.errors import CausalityCycleError
from procview.simulation import dependency_graph, run, schedule
from tests.utils import fixed


def port_order(network):
    return [str(ref) for ref in schedule(network).port_order]


def test_sequence_order():
    assert port_order(compile(Seq(fixed(1), fixed(2)))) == [
        "Fixed_0.stop",
        "Fixed_1.stop",
    ]


def test_join_comes_after_both_branches():
    network = compile(Par(fixed(1), fixed(2)))
    assert port_order(network) == [
        "par.go",
        "Fixed_0.stop",
        "Fixed_1.stop",
        "amp.z",
    ]
    assert schedule(network).component_order == ("par", "Fixed_0", "Fixed_1", "amp")
    # the gate reads the join on the next tick only
    assert ("amp.z", "par.go") not in dependency_graph(network).edges


def test_strict_delay_breaks_the_loop():
    network = compile(LoopAuto(fixed(2)))
    graph = dependency_graph(network)
    assert list(graph.edges) == [("delay.entD", "Fixed.stop")]
    assert port_order(network) == ["delay.entD", "Fixed.stop"]


def test_gated_delay_is_evaluated_in_two_groups():
    network = compile(LoopNonAuto(fixed(2)))
    assert schedule(network).groups == (
        ("delay", ("entD",)),
        ("Fixed", ("stop",)),
        ("delay", ("extP",)),
    )


def test_order_respects_every_dependency():
    expr = Seq(Par(fixed(1), Seq(fixed(2), fixed(3))), LoopNonAuto(fixed(4)))
    network = compile(expr)
    order = port_order(network)
    for source, target in dependency_graph(network).edges:
        assert order.index(source) < order.index(target)


class TestCausalityCycle:
    """
    Tests for feedback loops without a strict-causal component.
    """

    @pytest.fixture
    def looped(self):
        network = Network("looped")
        network.add_component(PlusConnector())
        network.connect("plus.z", "plus.x")
        return network

    def test_schedule_raises(self, looped):
        with pytest.raises(CausalityCycleError) as exc_info:
            schedule(looped)
        assert "plus.z" in exc_info.value.cycle
        assert "plus.z" in str(exc_info.value)

    def test_run_raises(self, looped):
        with pytest.raises(CausalityCycleError):
            run(looped, horizon=3)

    def test_dependency_graph_has_self_loop(self, looped):
        assert (str(PortRef("plus", "z")),) * 2 in dependency_graph(looped).edges
