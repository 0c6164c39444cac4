import logging
from typing import Dict, List, NamedTuple, Optional

from procview.composition.network import Network, PortRef
from procview.config import DEFAULT_HORIZON
from procview.simulation.env import EnvInputs
from procview.simulation.scheduler import schedule
from procview.simulation.trace import ComponentPorts, Trace, TraceWarning
from procview.streams.interval import EMPTY, TimeInterval
from procview.streams.stream import TimedStream

logger = logging.getLogger(__name__)

ASSUMPTION_VIOLATION = "AssumptionViolation"


class Violation(NamedTuple):
    """An assumption of `component` that fails at `tick`."""

    component: str
    tick: int
    predicate: str

    def __str__(self):
        return f"t={self.tick} {self.component}: {self.predicate}"


def _port_channels(network: Network) -> Dict[str, Dict[str, str]]:
    return {
        name: {
            port: network.bindings[PortRef(name, port)]
            for port in component.in_port_names
        }
        for name, component in network.components.items()
    }


def run(
    n: Network,
    env: Optional[EnvInputs] = None,
    horizon: int = DEFAULT_HORIZON,
) -> Trace:
    """
    Simulate a network for `horizon` ticks.

    At every tick the output ports are evaluated in :func:`schedule` order,
    each component reading the current-tick intervals of its inputs that are
    already known. Once every channel of the tick is known, each component
    commits its next state from the complete inputs. The run is deterministic:
    the same network, environment and horizon always give the same trace.

    Assumptions are checked on the finished trace; violations are recorded as
    ``AssumptionViolation`` warnings and the first violating tick is stored in
    :attr:`Trace.first_violation`.

    Args:
        n (Network): Network to simulate. Its components are not mutated.
        env (EnvInputs, optional): Streams of the external inputs; missing
            inputs stay silent.
        horizon (int): Number of ticks.

    Raises:
        CausalityCycleError: If the network cannot be scheduled.
        HorizonMismatchError: If an environment stream does not span `horizon`.
        UnknownStreamError: If the environment feeds an unknown channel.
    """
    if not isinstance(horizon, int) or horizon < 0:
        raise ValueError(f"`horizon` expects a non-negative int, but got {horizon!r}.")
    order = schedule(n)
    streams = (env or EnvInputs()).complete(n, horizon)
    inputs_of = _port_channels(n)
    components = n.components
    states = {name: c.initial_state() for name, c in components.items()}
    process_names = [
        name for name, c in components.items() if c.mode(states[name]) is not None
    ]

    history: Dict[str, List[TimeInterval]] = {ch: [] for ch in n.channels}
    modes = {name: [] for name in process_names}
    rules = {name: [] for name in process_names}
    warnings: List[TraceWarning] = []
    logger.debug(f"Running {n.name!r} for {horizon} ticks")

    for t in range(horizon):
        values = {ch: s.intervals[t] for ch, s in streams.items()}
        for name, ports in order.groups:
            known = {
                port: values[ch] for port, ch in inputs_of[name].items() if ch in values
            }
            result = components[name].transition(states[name], t, known)
            for port in ports:
                values[f"{name}.{port}"] = result.outputs[port]

        for name, component in components.items():
            inputs = {port: values[ch] for port, ch in inputs_of[name].items()}
            result = component.transition(states[name], t, inputs)
            if name in modes:
                modes[name].append(component.mode(states[name]))
                rules[name].append(result.rule)
            for w in result.warnings:
                warnings.append(TraceWarning(t, w.kind, name, w.message))
                logger.warning(f"{w.kind} at {name}: {w.message}", extra={"tick": t})
            states[name] = result.next_state

        for ch in history:
            history[ch].append(values.get(ch, EMPTY))

    trace = Trace(
        horizon=horizon,
        channels={
            ch: TimedStream(n.channels[ch].msg_type, tuple(intervals))
            for ch, intervals in history.items()
        },
        modes={name: tuple(m) for name, m in modes.items()},
        rules={name: tuple(r) for name, r in rules.items()},
        warnings=warnings,
        components={
            name: ComponentPorts(
                kind=c.kind,
                inputs=dict(inputs_of[name]),
                outputs={p: f"{name}.{p}" for p in c.out_port_names},
            )
            for name, c in components.items()
        },
    )

    violations = check_assumptions(n, trace)
    for v in violations:
        trace.warnings.append(
            TraceWarning(v.tick, ASSUMPTION_VIOLATION, v.component, v.predicate)
        )
        logger.warning(
            f"Assumption {v.predicate} of {v.component} violated",
            extra={"tick": v.tick},
        )
    if violations:
        trace.first_violation = min(v.tick for v in violations)
        trace.warnings.sort(key=lambda w: w.tick)
    return trace


def check_assumptions(n: Network, trace: Trace) -> List[Violation]:
    """
    Evaluate the assumption of every component of `n` on `trace`.

    Returns:
        List[Violation]: One entry per component, tick and failing predicate,
        ordered by tick.
    """
    inputs_of = _port_channels(n)
    violations = []
    for t in range(trace.horizon):
        for name, component in n.components.items():
            if not component.assumptions:
                continue
            inputs = {
                port: trace.channels[ch].intervals[t]
                for port, ch in inputs_of[name].items()
            }
            for a in component.violated_assumptions(inputs):
                violations.append(Violation(name, t, str(a)))
    return violations
