import itertools
import logging
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Union

from procview.composition.compiler import compile
from procview.composition.connectors import (
    AmpConnector,
    AtConnector,
    GatedDelay,
    PlusConnector,
)
from procview.composition.expr import Elem, ProcessExpr, is_autonomous, leaves
from procview.composition.network import Network
from procview.config import (
    DEFAULT_HORIZON,
    MAX_MEASUREMENT_ENVS,
    MEASUREMENT_INT_DOMAIN,
)
from procview.errors import MeasurementInconclusiveError, NoEntryPointError
from procview.logging_config import set_logger_level
from procview.process.component import Component
from procview.process.spec import ElementaryProcessSpec
from procview.simulation.env import ENTRY_ALIAS, EnvInputs
from procview.simulation.runner import run
from procview.simulation.trace import Trace
from procview.streams.message import MsgKind, MsgType

logger = logging.getLogger(__name__)

Events = Mapping[str, Mapping[int, list]]
InputSpace = Iterable[Union[EnvInputs, Events]]

# Horizon of the single-connector runs of `connector_costs`
CONNECTOR_HORIZON = 8


def _as_expr(p: Union[ProcessExpr, ElementaryProcessSpec]) -> ProcessExpr:
    return Elem(p) if isinstance(p, ElementaryProcessSpec) else p


def _value_domain(msg_type: MsgType) -> List[list]:
    """Interval contents tried for one data input at tick 0."""
    if msg_type.kind is MsgKind.EVENT:
        return [[], ["ev"]]
    if msg_type.kind is MsgKind.BOOL:
        return [[False], [True]]
    if msg_type.kind is MsgKind.INT:
        return [[v] for v in MEASUREMENT_INT_DOMAIN]
    return [[s] for s in msg_type.symbols]


def default_input_space(
    network: Network, limit: int = MAX_MEASUREMENT_ENVS
) -> Iterator[Dict[str, Dict[int, list]]]:
    """
    Enumerate small environments of `network` for WCET measurement.

    Every environment sends one event on the entry at tick 0 and one value
    per data input at the same tick, the cartesian product of a few values
    per type (see ``MEASUREMENT_INT_DOMAIN``). At most `limit` environments
    are produced.

    Raises:
        NoEntryPointError: If `network` has no entry.
    """
    if network.entry is None:
        raise NoEntryPointError(f"{network.name!r} has no entry point.")
    data = [ch for ch in network.external_inputs if ch != network.entry]
    domains = [_value_domain(network.channels[ch].msg_type) for ch in data]
    for values in itertools.islice(itertools.product(*domains), limit):
        events = {ENTRY_ALIAS: {0: ["ev"]}}
        events.update({ch: {0: v} for ch, v in zip(data, values) if v})
        yield events


def _first_tick(trace: Trace, channel: str, since: int = 0) -> Optional[int]:
    for t in trace.stream(channel).nonempty_ticks():
        if t >= since:
            return t
    return None


def activation_latency(trace: Trace, network: Network) -> Optional[int]:
    """
    Ticks from the first entry event to the first exit event at or after it.

    Returns None if the trace has no entry event or no exit after it.
    """
    entered = _first_tick(trace, network.entry)
    if entered is None:
        return None
    exited = _first_tick(trace, network.exit, entered)
    return None if exited is None else exited - entered


def measure_wcet(
    expr: Union[ProcessExpr, ElementaryProcessSpec],
    input_space: Optional[InputSpace] = None,
    horizon: int = DEFAULT_HORIZON,
    links: Iterable = (),
    progress: Optional[Callable[[int], None]] = None,
) -> int:
    """
    Measure the worst single-activation latency of a composition.

    Each environment of `input_space` is simulated for `horizon` ticks; the
    result is the largest latency between the first entry event and the
    first exit event after it. Simulator warnings are silenced during the
    runs.

    Args:
        expr (ProcessExpr | ElementaryProcessSpec): The process to measure.
        input_space (Iterable, optional): Environments, either
            :class:`EnvInputs` or sparse ``{channel: {tick: messages}}`` maps.
            Defaults to :func:`default_input_space`.
        horizon (int): Ticks simulated per environment.
        links (Iterable[Tuple[str, str]]): Data links of the composition.
        progress (Callable[[int], None], optional): Called after every run
            with the number of runs done.

    Raises:
        NoEntryPointError: If `expr` is an autonomous loop.
        MeasurementInconclusiveError: If a run has no entry event or no exit
            within `horizon`, or the input space is empty.

    Example::

        >>> measure_wcet(Seq(Elem(fixed(3)), Elem(fixed(5))))
        8
    """
    expr = _as_expr(expr)
    if is_autonomous(expr):
        raise NoEntryPointError("An autonomous loop has no entry point to measure.")
    network = compile(expr, links)
    if input_space is None:
        input_space = default_input_space(network)

    worst = None
    with set_logger_level("procview", logging.ERROR):
        for i, env in enumerate(input_space):
            if not isinstance(env, EnvInputs):
                env = EnvInputs.from_events(network, horizon, env)
            latency = activation_latency(run(network, env, horizon), network)
            if latency is None:
                raise MeasurementInconclusiveError(
                    f"Run {i} of {network.name!r} produced no exit within "
                    f"{horizon} ticks."
                )
            worst = latency if worst is None else max(worst, latency)
            if progress is not None:
                progress(i + 1)
    if worst is None:
        raise MeasurementInconclusiveError("The input space is empty.")
    logger.debug(f"Measured wcet of {network.name!r}: {worst}")
    return worst


def measured_bounds(
    expr: ProcessExpr, horizon: int = DEFAULT_HORIZON
) -> Dict[str, int]:
    """Measure every distinct leaf of `expr` alone, keyed by label."""
    bounds: Dict[str, int] = {}
    for _, elem in leaves(expr):
        if elem.label not in bounds:
            bounds[elem.label] = measure_wcet(elem, horizon=horizon)
    return bounds


def _connector_latency(
    component: Component,
    stimuli: Mapping[str, int],
    observed: Iterable[str],
    horizon: int = CONNECTOR_HORIZON,
) -> int:
    """
    Latency of a lone component from its last stimulus to its first response.

    Args:
        stimuli: Tick of one event per input port.
        observed: Output ports that count as a response.
    """
    network = Network(component.name)
    network.add_component(component)
    name = component.name
    env = EnvInputs.from_events(
        network, horizon, {f"{name}.{port}": {t: ["ev"]} for port, t in stimuli.items()}
    )
    with set_logger_level("procview", logging.ERROR):
        trace = run(network, env, horizon)
    since = max(stimuli.values())
    responses = [_first_tick(trace, f"{name}.{port}", since) for port in observed]
    responses = [t for t in responses if t is not None]
    if not responses:
        raise MeasurementInconclusiveError(
            f"{component.label} gave no response within {horizon} ticks."
        )
    return min(responses) - since


def connector_costs() -> Dict[str, int]:
    """
    Measure the latency of every connector by simulating it alone.

    ``&`` is timed with both arrival orders, ``@`` with its entry, ``+``
    with each of its inputs and the restart Delay with an external start.

    Returns:
        Dict[str, int]: Cost per connector label (``&``, ``@``, ``+``,
        ``Delay``).
    """
    amp = max(
        _connector_latency(AmpConnector(), {"x": tx, "y": ty}, ["z"])
        for tx, ty in itertools.product(range(3), repeat=2)
    )
    at = _connector_latency(AtConnector(), {"ent": 0}, ["o_left", "o_right"])
    plus = max(
        _connector_latency(PlusConnector(), {port: 0}, ["z"]) for port in ("x", "y")
    )
    delay = _connector_latency(GatedDelay(), {"entP": 0}, ["entD"])
    costs = {
        AmpConnector.label: amp,
        AtConnector.label: at,
        PlusConnector.label: plus,
        GatedDelay.label: delay,
    }
    logger.debug(f"Measured connector costs: {costs}")
    return costs
