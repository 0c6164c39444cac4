from dataclasses import dataclass
from typing import Dict, List, Tuple

import networkx as nx

from procview.composition.network import Network, PortRef
from procview.errors import CausalityCycleError


@dataclass(frozen=True)
class Schedule:
    """
    Evaluation order of a network within one tick.

    Attributes:
        port_order (Tuple[PortRef, ...]): Output ports in an order where every
            port comes after the ports its value depends on in the same tick.
        groups (Tuple[Tuple[str, Tuple[str, ...]], ...]): Consecutive ports of
            the same component, evaluated by one call of its transition.
    """

    port_order: Tuple[PortRef, ...]
    groups: Tuple[Tuple[str, Tuple[str, ...]], ...]

    @property
    def component_order(self) -> Tuple[str, ...]:
        """Components in order of their first evaluated port."""
        seen: Dict[str, None] = {}
        for ref in self.port_order:
            seen.setdefault(ref.component)
        return tuple(seen)


def dependency_graph(network: Network) -> nx.DiGraph:
    """
    Same-tick dependency graph between output ports.

    There is an edge ``A.o -> B.p`` when ``A.o`` drives an input of ``B`` that
    ``B.p`` reads on the same tick. Inputs of strict-causal components create no
    edges, so they break feedback loops.
    """
    graph = nx.DiGraph()
    for name, component in network.components.items():
        for port in component.out_port_names:
            graph.add_node(str(PortRef(name, port)), ref=PortRef(name, port))
    for name, component in network.components.items():
        for port in component.out_port_names:
            for in_port in sorted(component.feedthrough(port)):
                channel = network.bindings[PortRef(name, in_port)]
                source = network.channels[channel].source
                if source is not None:
                    graph.add_edge(str(source), str(PortRef(name, port)))
    return graph


def same_tick_sources(graph: nx.DiGraph, ref: PortRef) -> List[PortRef]:
    """Output ports `ref` depends on within the tick."""
    return [graph.nodes[n]["ref"] for n in graph.predecessors(str(ref))]


def schedule(network: Network) -> Schedule:
    """
    Order the output ports of `network` for same-tick evaluation.

    Ties are broken by component insertion order, so the schedule of a network
    is deterministic.

    Raises:
        CausalityCycleError: If same-tick dependencies form a cycle, i.e. a
            feedback loop runs through weak-causal components only.
    """
    graph = dependency_graph(network)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        raise CausalityCycleError([u for u, _ in cycle] + [cycle[-1][1]])

    rank = {node: i for i, node in enumerate(graph.nodes)}
    order = [
        graph.nodes[node]["ref"]
        for node in nx.lexicographical_topological_sort(graph, key=rank.__getitem__)
    ]
    groups: List[Tuple[str, List[str]]] = []
    for ref in order:
        # a port fed back from its own group needs a separate evaluation
        if (
            groups
            and groups[-1][0] == ref.component
            and not any(
                PortRef(ref.component, p) in same_tick_sources(graph, ref)
                for p in groups[-1][1]
            )
        ):
            groups[-1][1].append(ref.port)
        else:
            groups.append((ref.component, [ref.port]))
    return Schedule(tuple(order), tuple((c, tuple(ports)) for c, ports in groups))
