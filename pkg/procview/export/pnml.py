"""
Translation of process expressions into Place/Transition nets.

Only the control flow is kept. Every elementary process becomes one
transition between its entry place and its exit place; connectors become
transitions (``fork``, ``&``, ``Delay``) or roles of shared places (``@``,
``+``). A place may play several roles, such as the ``+`` of one alternative
and the ``@`` of the next.
"""

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from typing import Dict, List, Tuple

from procview._utils import node_id
from procview.composition.expr import (
    Alt,
    Elem,
    LoopAuto,
    LoopNonAuto,
    Par,
    ProcessExpr,
    Seq,
    instance_name,
    leaf_names,
)
from procview.config import (
    PNML_NAMESPACE,
    PNML_PTNET_TYPE,
    PNML_TOOL,
    PNML_TOOL_VERSION,
)
from procview.errors import NoEntryPointError

logger = logging.getLogger(__name__)

# Source kinds of net nodes
PROCESS = "process"
FORK = "fork"
JOIN = "&"
CHOICE = "@"
MERGE = "+"
DELAY = "Delay"
LINK = "link"
ENTRY = "entry"
EXIT = "exit"


@dataclass(frozen=True)
class Place:
    id: str
    label: str
    marking: int = 0
    sources: Tuple[str, ...] = (LINK,)


@dataclass(frozen=True)
class Transition:
    """A transition; `source` is ``process`` or the connector it stands for."""

    id: str
    label: str
    source: str = PROCESS


@dataclass(frozen=True)
class Arc:
    id: str
    source: str
    target: str


@dataclass
class PetriNetModel:
    """
    A Place/Transition net with its initial marking.

    Attributes:
        name (str): Net id.
        places (Dict[str, Place]): Places by id, in creation order.
        transitions (Dict[str, Transition]): Transitions by id.
        arcs (List[Arc]): Arcs, each between a place and a transition.
    """

    name: str = "net"
    places: Dict[str, Place] = field(default_factory=dict)
    transitions: Dict[str, Transition] = field(default_factory=dict)
    arcs: List[Arc] = field(default_factory=list)

    def add_place(self, key: str, label: str, source: str = LINK) -> str:
        place = Place(node_id("p", key), label, 0, (source,))
        self.places[place.id] = place
        return place.id

    def add_transition(self, key: str, label: str, source: str) -> str:
        transition = Transition(node_id("t", key), label, source)
        self.transitions[transition.id] = transition
        return transition.id

    def add_arc(self, source: str, target: str) -> None:
        self.arcs.append(Arc(f"a{len(self.arcs)}", source, target))

    def mark(self, place: str, tokens: int = 1) -> None:
        p = self.places[place]
        self.places[place] = replace(p, marking=p.marking + tokens)

    def tag(self, place: str, source: str) -> None:
        """Add the connector `source` to the roles of `place`."""
        p = self.places[place]
        sources = tuple(s for s in p.sources if s != LINK)
        if source not in sources:
            sources += (source,)
        self.places[place] = replace(p, sources=sources)

    def preset(self, node: str) -> Tuple[str, ...]:
        return tuple(a.source for a in self.arcs if a.target == node)

    def postset(self, node: str) -> Tuple[str, ...]:
        return tuple(a.target for a in self.arcs if a.source == node)

    @property
    def initial_marking(self) -> Dict[str, int]:
        return {p.id: p.marking for p in self.places.values() if p.marking}

    def places_of(self, source: str) -> Tuple[Place, ...]:
        return tuple(p for p in self.places.values() if source in p.sources)

    def transitions_of(self, source: str) -> Tuple[Transition, ...]:
        return tuple(t for t in self.transitions.values() if t.source == source)

    def is_bipartite(self) -> bool:
        """True iff every arc links a place and a transition."""
        for a in self.arcs:
            if not (
                (a.source in self.places and a.target in self.transitions)
                or (a.source in self.transitions and a.target in self.places)
            ):
                logger.debug(f"Arc {a.id} links {a.source} to {a.target}.")
                return False
        return True

    def to_pnml(self) -> str:
        """
        Serialize as PNML Core (Place/Transition net, one page).

        Each node carries a ``toolspecific`` element naming its sources in the
        process view.
        """
        root = ET.Element("pnml", xmlns=PNML_NAMESPACE)
        net = ET.SubElement(root, "net", id=node_id(self.name), type=PNML_PTNET_TYPE)
        ET.SubElement(ET.SubElement(net, "name"), "text").text = self.name
        page = ET.SubElement(net, "page", id="page0")
        for p in self.places.values():
            place = ET.SubElement(page, "place", id=p.id)
            ET.SubElement(ET.SubElement(place, "name"), "text").text = p.label
            if p.marking:
                marking = ET.SubElement(place, "initialMarking")
                ET.SubElement(marking, "text").text = str(p.marking)
            _tool(place, *p.sources)
        for t in self.transitions.values():
            transition = ET.SubElement(page, "transition", id=t.id)
            ET.SubElement(ET.SubElement(transition, "name"), "text").text = t.label
            _tool(transition, t.source)
        for a in self.arcs:
            ET.SubElement(page, "arc", id=a.id, source=a.source, target=a.target)
        ET.indent(root, space="  ")
        xml = ET.tostring(root, encoding="unicode")
        return '<?xml version="1.0" encoding="UTF-8"?>\n' + xml + "\n"


def _tool(element: ET.Element, *sources: str) -> None:
    tool = ET.SubElement(
        element, "toolspecific", tool=PNML_TOOL, version=PNML_TOOL_VERSION
    )
    for source in sources:
        ET.SubElement(tool, "source").text = source


class _Builder:
    def __init__(self, model: PetriNetModel, names: Dict[str, str]):
        self.model = model
        self.names = names

    def place(self, key: str, label: str, source: str = LINK) -> str:
        return self.model.add_place(key, label, source)

    def transition(self, key: str, label: str, source: str, inputs, outputs) -> str:
        t = self.model.add_transition(key, label, source)
        for p in inputs:
            self.model.add_arc(p, t)
        for p in outputs:
            self.model.add_arc(t, p)
        return t

    def build(self, expr: ProcessExpr, path: str, entry: str, exit_: str) -> None:
        if isinstance(expr, Elem):
            name = self.names[path]
            self.transition(name, name, PROCESS, [entry], [exit_])

        elif isinstance(expr, Seq):
            seq = instance_name("seq", path)
            middle = self.place(seq, seq)
            self.build(expr.left, path + "0", entry, middle)
            self.build(expr.right, path + "1", middle, exit_)

        elif isinstance(expr, Par):
            par = instance_name("par", path)
            begins = [self.place(f"{par}_in{i}", f"{par}.in{i}") for i in range(2)]
            ends = [self.place(f"{par}_out{i}", f"{par}.out{i}") for i in range(2)]
            self.transition(par, par, FORK, [entry], begins)
            self.build(expr.left, path + "0", begins[0], ends[0])
            self.build(expr.right, path + "1", begins[1], ends[1])
            amp = instance_name("amp", path)
            self.transition(amp, amp, JOIN, ends, [exit_])

        elif isinstance(expr, Alt):
            # free choice on the entry place, merge on the exit place
            self.model.tag(entry, CHOICE)
            self.model.tag(exit_, MERGE)
            self.build(expr.left, path + "0", entry, exit_)
            self.build(expr.right, path + "1", entry, exit_)

        elif isinstance(expr, LoopNonAuto):
            # the idle place is the restart gate; the body exit returns to it
            delay = instance_name("delay", path)
            idle = self.place(f"{delay}_idle", f"{delay}.idle", DELAY)
            self.model.mark(idle)
            begin = self.place(f"{delay}_entD", f"{delay}.entD")
            end = self.place(f"{delay}_extD", f"{delay}.extD")
            if expr.restart_policy.allow_restart_while_running:
                self.transition(delay, delay, DELAY, [entry, idle], [begin, idle])
                self.transition(f"{delay}_ext", f"{delay}.ext", DELAY, [end], [exit_])
            else:
                self.transition(delay, delay, DELAY, [entry, idle], [begin])
                self.transition(
                    f"{delay}_ext", f"{delay}.ext", DELAY, [end], [exit_, idle]
                )
            self.build(expr.body, path + "0", begin, end)

        elif isinstance(expr, LoopAuto):
            raise NoEntryPointError(
                f"The autonomous loop at {path!r} has no entry or exit point and "
                f"cannot be composed further."
            )

        else:
            raise TypeError(
                f"`expr` expects a process expression, but got {type(expr).__name__}."
            )


def build_petri_net(expr: ProcessExpr, name: str = "net") -> PetriNetModel:
    """
    Translate the control flow of `expr` into a Place/Transition net.

    - an elementary process is one transition from its entry place to its
      exit place;
    - a sequence shares the exit place of its left operand with the entry
      place of its right operand;
    - a parallel composition forks its entry into one place per operand and
      joins their exits with an ``&`` transition;
    - an alternative is a free choice: both operands consume from the same
      entry place (``@``) and produce into the same exit place (``+``);
    - a non-autonomous loop passes every start through a Delay transition
      that needs a token on its idle place, and hands the body exit back to
      that place while forwarding it to the loop exit. A loop that allows
      restarts while running puts the idle token back at once;
    - an autonomous loop starts its body through a Delay transition from a
      self-start place, into which the body exits.

    The entry place holds one token; an autonomous loop marks its
    self-start place instead. Idle places of non-autonomous loops hold one
    token each.

    Raises:
        NoEntryPointError: If an autonomous loop is nested in another operator.

    Example::

        >>> net = build_petri_net(Seq(Elem(p), Elem(q)))
        >>> len(net.places), len(net.transitions)
        (3, 2)
    """
    model = PetriNetModel(name)
    builder = _Builder(model, leaf_names(expr))
    if isinstance(expr, LoopAuto):
        start = builder.place("start", "self-start", ENTRY)
        begin = builder.place("delay_entD", "delay.entD")
        builder.transition("delay", "delay", DELAY, [start], [begin])
        builder.build(expr.body, "0", begin, start)
        model.mark(start)
    else:
        entry = builder.place("entry", ENTRY, ENTRY)
        exit_ = builder.place("exit", EXIT, EXIT)
        builder.build(expr, "", entry, exit_)
        model.mark(entry)
    logger.debug(
        f"Petri net {name!r}: {len(model.places)} places, "
        f"{len(model.transitions)} transitions, {len(model.arcs)} arcs"
    )
    return model


def export_pnml(
    expr: ProcessExpr, name: str = "net"
) -> Tuple[PetriNetModel, str]:
    """Translate `expr` (see :func:`build_petri_net`) and serialize it as PNML."""
    model = build_petri_net(expr, name)
    return model, model.to_pnml()
