import logging
from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, Hashable, List, Tuple

import networkx as nx
from snakes.nets import PetriNet, Place, Transition, Value, dot

from procview.config import MAX_REACHABLE_MARKINGS
from procview.export.pnml import PROCESS, PetriNetModel

logger = logging.getLogger(__name__)


def to_snakes(model: PetriNetModel) -> PetriNet:
    """Build the black-token snakes net of `model`, initially marked."""
    net = PetriNet(model.name)
    for p in model.places.values():
        net.add_place(Place(p.id, [dot] * p.marking))
    for t in model.transitions.values():
        net.add_transition(Transition(t.id))
    for a in model.arcs:
        if a.source in model.places:
            net.add_input(a.source, a.target, Value(dot))
        else:
            net.add_output(a.target, a.source, Value(dot))
    return net


@dataclass
class ReachabilityResult:
    """
    Reachability graph of a net from its initial marking.

    Attributes:
        graph (nx.MultiDiGraph): One node per reachable marking, one edge per
            firing, labelled with the transition id under ``transition``.
        initial (Hashable): The initial marking.
        fired (FrozenSet[str]): Transitions firing on some edge.
        complete (bool): False if the exploration stopped at the marking cap.
    """

    graph: nx.MultiDiGraph
    initial: Hashable
    fired: FrozenSet[str]
    complete: bool = True

    @property
    def dead_markings(self) -> Tuple[Hashable, ...]:
        return tuple(m for m in self.graph.nodes if self.graph.out_degree(m) == 0)

    def maximal_runs(self) -> List[Tuple[str, ...]]:
        """
        Transition sequences from the initial marking to every dead marking.

        Only simple paths are followed, so runs through cycles are cut.
        """
        runs = []
        for target in self.dead_markings:
            if target == self.initial:
                runs.append(())
                continue
            for path in nx.all_simple_edge_paths(self.graph, self.initial, target):
                runs.append(
                    tuple(self.graph.edges[e]["transition"] for e in path)
                )
        return sorted(runs)


def reachability(
    model: PetriNetModel, max_markings: int = MAX_REACHABLE_MARKINGS
) -> ReachabilityResult:
    """
    Explore every marking reachable from the initial one, breadth first.

    Args:
        model (PetriNetModel): The net.
        max_markings (int): Exploration stops after this many markings and
            the result is flagged incomplete.

    Example::

        >>> result = reachability(build_petri_net(Seq(Elem(p), Elem(q))))
        >>> result.maximal_runs()
        [('t_P', 't_Q')]
    """
    net = to_snakes(model)
    initial = net.get_marking()
    graph = nx.MultiDiGraph()
    graph.add_node(initial)
    queue = deque([initial])
    fired = set()
    complete = True

    while queue:
        marking = queue.popleft()
        for t in net.transition():
            net.set_marking(marking)
            for mode in t.modes():
                net.set_marking(marking)
                t.fire(mode)
                successor = net.get_marking()
                fired.add(t.name)
                if successor not in graph:
                    if graph.number_of_nodes() >= max_markings:
                        complete = False
                        continue
                    queue.append(successor)
                graph.add_edge(marking, successor, transition=t.name)

    if not complete:
        logger.warning(
            f"Reachability of {model.name!r} stopped after {max_markings} markings."
        )
    logger.debug(
        f"{model.name!r}: {graph.number_of_nodes()} markings, "
        f"{graph.number_of_edges()} firings"
    )
    return ReachabilityResult(graph, initial, frozenset(fired), complete)


def fired_processes(model: PetriNetModel, result: ReachabilityResult) -> FrozenSet[str]:
    """Labels (instance names) of the process transitions that can fire."""
    return frozenset(
        model.transitions[t].label
        for t in result.fired
        if model.transitions[t].source == PROCESS
    )
