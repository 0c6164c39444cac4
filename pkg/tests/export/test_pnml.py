import xml.etree.ElementTree as ET

import pytest
from snakes.data import MultiSet
from snakes.nets import dot

from procview.composition import (
    Alt,
    Elem,
    LoopAuto,
    LoopNonAuto,
    Par,
    RestartPolicy,
    Seq,
    leaf_names,
)
from procview.config import PNML_NAMESPACE
from procview.errors import NoEntryPointError
from procview.export import (
    build_petri_net,
    export_pnml,
    fired_processes,
    reachability,
)
from procview.export.pnml import CHOICE, DELAY, ENTRY, EXIT, FORK, JOIN, MERGE
from procview.process.component import ProcessMode
from tests.utils import fixed, fixed_spec, simulate

P, Q = Elem(fixed_spec("P", 2)), Elem(fixed_spec("Q", 3))
NS = f"{{{PNML_NAMESPACE}}}"


def random_fixture(rng, depth):
    if depth == 0 or rng.random() < 0.2:
        return fixed(rng.randint(1, 6))
    op = rng.choice([Seq, Par, Alt, LoopNonAuto])
    if op is LoopNonAuto:
        return LoopNonAuto(random_fixture(rng, depth - 1))
    return op(random_fixture(rng, depth - 1), random_fixture(rng, depth - 1))


def sizes(expr):
    net = build_petri_net(expr)
    return len(net.places), len(net.transitions)


class TestBuildPetriNet:
    """
    Tests for the translation of process expressions into nets.
    """

    @pytest.mark.parametrize(
        "expr, expected",
        [
            (P, (2, 1)),
            (Seq(P, Q), (3, 2)),
            (Par(P, Q), (6, 4)),
            (Alt(P, Q), (2, 2)),
            (LoopNonAuto(P), (5, 3)),
            (LoopAuto(P), (2, 2)),
        ],
    )
    def test_sizes(self, expr, expected):
        assert sizes(expr) == expected

    def test_initial_marking(self):
        assert build_petri_net(Seq(P, Q)).initial_marking == {"p_entry": 1}
        assert build_petri_net(LoopAuto(P)).initial_marking == {"p_start": 1}
        assert build_petri_net(LoopNonAuto(P)).initial_marking == {
            "p_entry": 1,
            "p_delay_idle": 1,
        }

    def test_connector_sources(self):
        net = build_petri_net(Par(P, Q))
        assert [t.label for t in net.transitions_of(FORK)] == ["par"]
        assert [t.label for t in net.transitions_of(JOIN)] == ["amp"]
        net = build_petri_net(LoopNonAuto(Alt(P, Q)))
        assert [t.label for t in net.transitions_of(DELAY)] == ["delay", "delay.ext"]
        assert [p.label for p in net.places_of(CHOICE)] == ["delay.entD"]
        assert [p.label for p in net.places_of(MERGE)] == ["delay.extD"]

    def test_every_alternative_is_annotated(self):
        net = build_petri_net(Alt(P, Q))
        assert net.places["p_entry"].sources == (ENTRY, CHOICE)
        assert net.places["p_exit"].sources == (EXIT, MERGE)
        net = build_petri_net(Seq(Alt(P, Q), Alt(Q, P)))
        assert net.places["p_seq"].sources == (MERGE, CHOICE)
        assert len(net.places_of(CHOICE)) == 2
        assert len(net.places_of(MERGE)) == 2

    def test_every_net_is_bipartite(self):
        expr = Seq(Par(P, Alt(Q, P)), LoopNonAuto(Seq(Q, P)))
        net = build_petri_net(expr)
        assert net.is_bipartite()
        for t in net.transitions:
            assert net.preset(t) and net.postset(t)

    def test_nested_autonomous_loop(self):
        with pytest.raises(NoEntryPointError):
            build_petri_net(Seq(LoopAuto(P), Q))


class TestPnml:
    """
    Tests for the PNML serialization.
    """

    def test_document(self):
        model, text = export_pnml(Par(P, Q), "fork")
        assert text.startswith('<?xml version="1.0" encoding="UTF-8"?>\n')
        root = ET.fromstring(text.split("\n", 1)[1])
        assert root.tag == f"{NS}pnml"
        [net] = root.findall(f"{NS}net")
        assert net.get("id") == "fork"
        page = net.find(f"{NS}page")
        assert len(page.findall(f"{NS}place")) == 6
        assert len(page.findall(f"{NS}transition")) == 4
        assert len(page.findall(f"{NS}arc")) == len(model.arcs)

    def test_marking_and_sources(self):
        _, text = export_pnml(Seq(P, Q))
        root = ET.fromstring(text.split("\n", 1)[1])
        entry = next(p for p in root.iter(f"{NS}place") if p.get("id") == "p_entry")
        assert entry.find(f"{NS}initialMarking/{NS}text").text == "1"
        sources = [s.text for s in root.iter(f"{NS}source")]
        assert sources.count("process") == 2

    def test_places_list_every_role(self):
        _, text = export_pnml(Alt(P, Q))
        root = ET.fromstring(text.split("\n", 1)[1])
        entry = next(p for p in root.iter(f"{NS}place") if p.get("id") == "p_entry")
        assert [s.text for s in entry.iter(f"{NS}source")] == ["entry", "@"]

    def test_arcs_reference_nodes(self):
        _, text = export_pnml(Seq(Alt(P, Q), LoopNonAuto(P)))
        root = ET.fromstring(text.split("\n", 1)[1])
        nodes = (f"{NS}place", f"{NS}transition")
        ids = {e.get("id") for e in root.iter() if e.tag in nodes}
        for arc in root.iter(f"{NS}arc"):
            assert arc.get("source") in ids
            assert arc.get("target") in ids


class TestReachability:
    """
    Tests for exploring the reachable markings of translated nets.
    """

    def test_sequence_has_one_run(self):
        result = reachability(build_petri_net(Seq(P, Q)))
        assert result.complete
        assert result.maximal_runs() == [("t_P", "t_Q")]

    def test_parallel_interleavings(self):
        result = reachability(build_petri_net(Par(P, Q)))
        assert result.maximal_runs() == [
            ("t_par", "t_P", "t_Q", "t_amp"),
            ("t_par", "t_Q", "t_P", "t_amp"),
        ]
        assert len(result.dead_markings) == 1

    def test_alternative_runs_one_branch(self):
        result = reachability(build_petri_net(Alt(P, Q)))
        assert result.maximal_runs() == [("t_P",), ("t_Q",)]

    def test_autonomous_loop_never_deadlocks(self):
        model = build_petri_net(LoopAuto(Seq(P, Q)))
        result = reachability(model)
        assert result.dead_markings == ()
        assert fired_processes(model, result) == {"P", "Q"}

    def test_manual_loop_waits_for_its_body(self):
        model = build_petri_net(LoopNonAuto(P))
        model.mark("p_entry")
        result = reachability(model)
        assert result.maximal_runs() == [
            ("t_delay", "t_P", "t_delay_ext", "t_delay", "t_P", "t_delay_ext")
        ]
        [dead] = result.dead_markings
        assert dead("p_exit") == MultiSet([dot, dot])
        assert dead("p_delay_idle") == MultiSet([dot])

    def test_manual_loop_with_restarts(self):
        model = build_petri_net(LoopNonAuto(P, RestartPolicy(True)))
        model.mark("p_entry")
        runs = reachability(model).maximal_runs()
        restarted = ("t_delay", "t_delay", "t_P", "t_P", "t_delay_ext", "t_delay_ext")
        assert restarted in runs

    def test_marking_cap(self):
        result = reachability(build_petri_net(Par(P, Q)), max_markings=2)
        assert not result.complete
        assert result.graph.number_of_nodes() == 2

    def test_agrees_with_simulated_activations(self, rng):
        """
        Test that the processes able to fire in the net are the ones the
        simulator activates when every choice gets to take both branches.
        """
        entries = {"entry": {t: ["ev"] for t in (0, 30, 60, 90)}}
        for _ in range(100):
            expr = random_fixture(rng, 2)
            model = build_petri_net(expr)
            trace = simulate(expr, entries, horizon=120)
            activated = {
                name
                for name in leaf_names(expr).values()
                if ProcessMode.ACTIVE in trace.modes[name]
            }
            assert fired_processes(model, reachability(model)) == activated, expr
