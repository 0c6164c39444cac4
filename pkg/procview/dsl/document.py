from dataclasses import dataclass, field
from typing import Dict, List, Mapping, NamedTuple, Tuple

from procview.composition.compiler import compile
from procview.composition.expr import Elem, ProcessExpr
from procview.composition.network import Network
from procview.errors import UnresolvedReferenceError
from procview.process.spec import ElementaryProcessSpec
from procview.simulation.env import EnvInputs
from procview.streams.message import Message

PROCESS = "process"
COMPOSE = "compose"
ENV = "env"


class Span(NamedTuple):
    """Position of a declaration in the source text, 1-based."""

    line: int
    column: int

    def __str__(self):
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class CompositionDecl:
    """
    ``compose NAME = expr with A.y -> B.x, ...``

    Attributes:
        name (str): Name of the composition.
        expr (ProcessExpr): The composition, with references resolved.
        links (Tuple[Tuple[str, str], ...]): Data links between instances.
    """

    name: str
    expr: ProcessExpr
    links: Tuple[Tuple[str, str], ...] = ()

    def compile(self) -> Network:
        return compile(self.expr, self.links, self.name)


@dataclass(frozen=True)
class EnvEvent:
    """Messages the environment sends on `channel` at `tick`."""

    channel: str
    tick: int
    messages: Tuple[Message, ...]


@dataclass(frozen=True)
class EnvDecl:
    """``env NAME { channel @ tick = [messages]; ... }``"""

    name: str
    events: Tuple[EnvEvent, ...] = ()

    def sparse(self) -> Dict[str, Dict[int, List[Message]]]:
        """``{channel: {tick: messages}}``, messages of repeated entries joined."""
        events: Dict[str, Dict[int, List[Message]]] = {}
        for e in self.events:
            events.setdefault(e.channel, {}).setdefault(e.tick, []).extend(e.messages)
        return events

    def to_inputs(self, network: Network, horizon: int) -> EnvInputs:
        """
        Streams of this environment for `network` over `horizon` ticks.

        Raises:
            UnknownStreamError: If a channel is not an external input.
            HorizonExceededError: If an event lies at or past `horizon`.
            ChannelTypeError: If a message does not match its channel.
        """
        return EnvInputs.from_events(network, horizon, self.sparse())


@dataclass
class SpecDocument:
    """
    A parsed specification document.

    Each namespace keeps its declarations in source order. Two documents are
    equal iff their declarations are; source positions are ignored.

    Attributes:
        processes (Dict[str, ElementaryProcessSpec]): Elementary processes.
        compositions (Dict[str, CompositionDecl]): Named compositions.
        envs (Dict[str, EnvDecl]): Named environments.
        spans (Dict[Tuple[str, str], Span]): Position of every declaration,
            keyed by ``(namespace, name)``.
    """

    processes: Dict[str, ElementaryProcessSpec] = field(default_factory=dict)
    compositions: Dict[str, CompositionDecl] = field(default_factory=dict)
    envs: Dict[str, EnvDecl] = field(default_factory=dict)
    spans: Dict[Tuple[str, str], Span] = field(default_factory=dict, compare=False)

    def process_expr(self, name: str) -> ProcessExpr:
        """
        The composition named `name`, or a single elementary process.

        Raises:
            UnresolvedReferenceError: If nothing is declared under `name`.
        """
        if name in self.compositions:
            return self.compositions[name].expr
        if name in self.processes:
            return Elem(self.processes[name])
        raise UnresolvedReferenceError(
            f"No composition or process named {name!r}; declared: "
            f"{sorted(self.compositions) + sorted(self.processes)}."
        )

    def network(self, name: str) -> Network:
        """Compile the composition (or process) `name`."""
        if name in self.compositions:
            return self.compositions[name].compile()
        return compile(self.process_expr(name), name=name)

    def links(self, name: str) -> Tuple[Tuple[str, str], ...]:
        decl = self.compositions.get(name)
        return decl.links if decl else ()

    def env(self, name: str) -> EnvDecl:
        try:
            return self.envs[name]
        except KeyError:
            raise UnresolvedReferenceError(
                f"No environment named {name!r}; declared: {sorted(self.envs)}."
            ) from None

    def env_inputs(self, name: str, network: Network, horizon: int) -> EnvInputs:
        return self.env(name).to_inputs(network, horizon)

    def span_of(self, namespace: str, name: str) -> Span:
        return self.spans.get((namespace, name), Span(0, 0))

    def declarations(self) -> Mapping[str, int]:
        """Number of declarations per namespace."""
        return {
            PROCESS: len(self.processes),
            COMPOSE: len(self.compositions),
            ENV: len(self.envs),
        }
