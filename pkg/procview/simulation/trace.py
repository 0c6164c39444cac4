from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from procview.errors import HorizonMismatchError, UnknownStreamError
from procview.process.component import ProcessMode
from procview.streams.interval import TimeInterval
from procview.streams.stream import TimedStream


@dataclass(frozen=True)
class TraceWarning:
    """
    A model-level warning recorded during a run.

    Attributes:
        tick (int): Tick at which the warning was raised.
        kind (str): ``RestartWhileActive``, ``MergeCollision``,
            ``StartDropped`` or ``AssumptionViolation``.
        location (str): Component instance that raised it.
        message (str): Details.
    """

    tick: int
    kind: str
    location: str
    message: str = ""

    def __str__(self):
        return f"t={self.tick} {self.kind} at {self.location}: {self.message}"


@dataclass
class ComponentPorts:
    """Kind of a component instance and the channel behind each of its ports."""

    kind: str
    inputs: Dict[str, str] = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)


@dataclass
class Trace:
    """
    Record of a finite run: every interval of every channel, the mode and fired
    rule of every process component, and the warnings raised.

    Attributes:
        horizon (int): Number of simulated ticks.
        channels (Dict[str, TimedStream]): Stream of every channel.
        modes (Dict[str, Tuple[ProcessMode, ...]]): Mode of every process
            component at the start of every tick.
        rules (Dict[str, Tuple[str, ...]]): Rule fired by every process
            component at every tick.
        warnings (List[TraceWarning]): Warnings in tick order.
        components (Dict[str, ComponentPorts]): Port-to-channel map.
        first_violation (int | None): First tick at which an assumption was
            violated. Guarantees are void from this tick on.
    """

    horizon: int
    channels: Dict[str, TimedStream]
    modes: Dict[str, Tuple[ProcessMode, ...]] = field(default_factory=dict)
    rules: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    warnings: List[TraceWarning] = field(default_factory=list)
    components: Dict[str, ComponentPorts] = field(default_factory=dict)
    first_violation: Optional[int] = None

    def __post_init__(self):
        for name, stream in self.channels.items():
            if stream.horizon != self.horizon:
                raise HorizonMismatchError(
                    f"Channel {name!r} has {stream.horizon} ticks, "
                    f"but the trace horizon is {self.horizon}."
                )
        for name, modes in self.modes.items():
            if len(modes) != self.horizon:
                raise HorizonMismatchError(
                    f"Modes of {name!r} cover {len(modes)} ticks, "
                    f"but the trace horizon is {self.horizon}."
                )

    def stream(self, channel: str) -> TimedStream:
        try:
            return self.channels[channel]
        except KeyError:
            raise UnknownStreamError(f"Unknown channel {channel!r}.") from None

    def ports(self, component: str) -> ComponentPorts:
        try:
            return self.components[component]
        except KeyError:
            raise UnknownStreamError(f"Unknown component {component!r}.") from None

    def port_stream(self, component: str, port: str) -> TimedStream:
        """Stream read or driven by ``component.port``."""
        ports = self.ports(component)
        channel = ports.outputs.get(port, ports.inputs.get(port))
        if channel is None:
            raise UnknownStreamError(f"Unknown port '{component}.{port}'.")
        return self.stream(channel)

    def output_ports(self, component: str) -> Tuple[str, ...]:
        return tuple(self.ports(component).outputs)

    def outputs(self, component: str) -> Dict[str, TimedStream]:
        return {
            port: self.stream(channel)
            for port, channel in self.ports(component).outputs.items()
        }

    def interval(self, channel: str, t: int) -> TimeInterval:
        return self.stream(channel).interval_at(t)

    def tick(self, t: int) -> Mapping[str, TimeInterval]:
        """All channel intervals at tick `t`."""
        return {name: s.interval_at(t) for name, s in self.channels.items()}

    def is_constrained(self, t: int) -> bool:
        """False from the first assumption violation on."""
        return self.first_violation is None or t < self.first_violation

    def warnings_of(self, kind: str) -> List[TraceWarning]:
        return [w for w in self.warnings if w.kind == kind]
