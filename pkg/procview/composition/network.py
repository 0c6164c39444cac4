import logging
from collections import OrderedDict
from dataclasses import dataclass
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from procview._utils import split_port
from procview.errors import (
    NameCollisionError,
    UnknownStreamError,
    WireTypeMismatchError,
)
from procview.process.component import Component
from procview.streams.message import MsgType

logger = logging.getLogger(__name__)


class PortRef(NamedTuple):
    """A port of a component instance, written ``instance.port``."""

    component: str
    port: str

    def __str__(self):
        return f"{self.component}.{self.port}"

    @classmethod
    def parse(cls, ref: str) -> "PortRef":
        return cls(*split_port(ref))


@dataclass(frozen=True)
class Channel:
    """
    A named stream of a network.

    Attributes:
        name (str): Channel name; ``instance.port`` of its driver, or of its
            first sink for external inputs.
        msg_type (MsgType): Type of the messages on the channel.
        source (PortRef | None): Output port driving the channel; None for an
            external input fed by the environment.
    """

    name: str
    msg_type: MsgType
    source: Optional[PortRef] = None

    @property
    def is_external(self) -> bool:
        return self.source is None


class Wire(NamedTuple):
    channel: str
    source: Optional[PortRef]
    sink: PortRef


class Network:
    """
    Components wired through named channels.

    Every output port drives the channel named after it. Every input port is
    bound to exactly one channel, either driven by an output port or fed by the
    environment. Adding a component creates one external channel per input
    port; :meth:`connect` and :meth:`merge` then rebind sinks to drivers.

    Attributes:
        name (str): Name of the network.
        components (OrderedDict[str, Component]): Instances by name.
        channels (OrderedDict[str, Channel]): Channels by name.
        bindings (Dict[PortRef, str]): Channel each input port reads.
        entry (str | None): Entry channel, None for autonomous loops.
        exit (str | None): Exit channel, None for autonomous loops.
    """

    def __init__(self, name: str = "network"):
        self.name = name
        self.components: "OrderedDict[str, Component]" = OrderedDict()
        self.channels: "OrderedDict[str, Channel]" = OrderedDict()
        self.bindings: Dict[PortRef, str] = {}
        self.entry: Optional[str] = None
        self.exit: Optional[str] = None

    def add_component(self, component: Component) -> Component:
        """
        Add a component under its own name.

        Raises:
            NameCollisionError: If the name or one of its channels is taken.
        """
        name = component.name
        if name in self.components:
            raise NameCollisionError(f"Component {name!r} already exists.")
        for port in component.in_ports + component.out_ports:
            if f"{name}.{port.name}" in self.channels:
                raise NameCollisionError(
                    f"Channel '{name}.{port.name}' already exists."
                )
        self.components[name] = component
        for port in component.out_ports:
            ref = PortRef(name, port.name)
            self.channels[str(ref)] = Channel(str(ref), port.msg_type, ref)
        for port in component.in_ports:
            ref = PortRef(name, port.name)
            self.channels[str(ref)] = Channel(str(ref), port.msg_type)
            self.bindings[ref] = str(ref)
        return component

    def component(self, name: str) -> Component:
        try:
            return self.components[name]
        except KeyError:
            raise UnknownStreamError(f"Unknown component {name!r}.") from None

    def channel_of(self, ref: PortRef) -> str:
        """Channel a port reads (input) or drives (output)."""
        component = self.component(ref.component)
        if ref.port in component.out_port_names:
            return str(ref)
        if ref.port in component.in_port_names:
            return self.bindings[ref]
        raise UnknownStreamError(f"Unknown port {ref}.")

    def sinks(self, channel: str) -> List[PortRef]:
        return [ref for ref, ch in self.bindings.items() if ch == channel]

    def bind(self, sink: PortRef, channel: str) -> None:
        """
        Make input port `sink` read `channel`, dropping the channel it read
        before if it was external and no other port reads it.

        Raises:
            UnknownStreamError: If the port or the channel does not exist.
            WireTypeMismatchError: If the types of port and channel differ.
        """
        if sink not in self.bindings:
            raise UnknownStreamError(f"{sink} is not an input port.")
        if channel not in self.channels:
            raise UnknownStreamError(f"Unknown channel {channel!r}.")
        expected = self.component(sink.component).port(sink.port).msg_type
        actual = self.channels[channel].msg_type
        if expected != actual:
            raise WireTypeMismatchError(
                f"{sink} expects {expected}, but channel {channel!r} carries {actual}."
            )
        previous = self.bindings[sink]
        self.bindings[sink] = channel
        self._drop_if_orphan(previous)

    def connect(self, source: str, sink: str) -> None:
        """
        Wire output port `source` to input port `sink` (both ``instance.port``).

        Raises:
            UnknownStreamError: If a port does not exist or `sink` already has a
                driver.
            WireTypeMismatchError: If the port types differ.
        """
        src, dst = PortRef.parse(source), PortRef.parse(sink)
        if src.port not in self.component(src.component).out_port_names:
            raise UnknownStreamError(f"{source} is not an output port.")
        if dst in self.bindings and not self.channels[self.bindings[dst]].is_external:
            raise UnknownStreamError(f"{sink} already has a driver.")
        self.bind(dst, str(src))
        logger.debug(f"{self.name}: wired {source} -> {sink}")

    def merge(self, channel: str, into: str) -> None:
        """Rebind every sink of external `channel` to `into` and drop `channel`."""
        if not self.channels[channel].is_external:
            raise UnknownStreamError(f"Channel {channel!r} is driven by a port.")
        for sink in self.sinks(channel):
            self.bind(sink, into)
        if channel in self.channels:
            self._drop_if_orphan(channel)

    def _drop_if_orphan(self, channel: str) -> None:
        if (
            self.channels[channel].is_external
            and channel not in (self.entry, self.exit)
            and not self.sinks(channel)
        ):
            del self.channels[channel]

    @property
    def external_inputs(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.channels.values() if c.is_external)

    @property
    def external_outputs(self) -> Tuple[str, ...]:
        """Driven channels no port of the network reads."""
        read = set(self.bindings.values())
        return tuple(
            c.name
            for c in self.channels.values()
            if not c.is_external and c.name not in read
        )

    @property
    def wires(self) -> Tuple[Wire, ...]:
        """One wire per bound input port, in component and port order."""
        wires = []
        for name, component in self.components.items():
            for port in component.in_port_names:
                ref = PortRef(name, port)
                channel = self.bindings[ref]
                wires.append(Wire(channel, self.channels[channel].source, ref))
        return tuple(wires)

    def named_components(self) -> Iterator[Tuple[str, Component]]:
        yield from self.components.items()

    def port_map(self, name: str) -> Dict[str, str]:
        """Channel of every port of component `name`."""
        component = self.component(name)
        return {
            port: self.channel_of(PortRef(name, port))
            for port in component.in_port_names + component.out_port_names
        }

    def __repr__(self):
        lines = [f"({n}): {c!r}" for n, c in self.components.items()]
        lines.append(f"entry={self.entry!r}, exit={self.exit!r}")
        return f"Network({self.name!r},\n  " + "\n  ".join(lines) + "\n)"
