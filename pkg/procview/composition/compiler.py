import logging
from typing import Dict, Iterable, NamedTuple, Optional, Tuple, Union

from procview.composition.connectors import (
    AUTONOMOUS,
    amp_connector,
    at_connector,
    delay_component,
    fork_gate,
    plus_connector,
)
from procview.composition.expr import (
    Alt,
    Elem,
    LoopAuto,
    LoopNonAuto,
    Par,
    ProcessExpr,
    Seq,
    instance_name,
    is_autonomous,
    leaf_names,
)
from procview.composition.network import Network, PortRef
from procview.config import START_PORT, STOP_PORT
from procview.errors import NoEntryPointError
from procview.process.process_component import ProcessComponent
from procview.process.spec import ElementaryProcessSpec

logger = logging.getLogger(__name__)

Link = Tuple[str, str]


class _Fragment(NamedTuple):
    entry: Optional[str]
    exit: Optional[str]


def _require(fragment: _Fragment, path: str) -> _Fragment:
    if fragment.entry is None or fragment.exit is None:
        raise NoEntryPointError(
            f"The autonomous loop at {path or 'the root'!r} has no entry or exit "
            f"point and cannot be composed further."
        )
    return fragment


def _build(
    expr: ProcessExpr, path: str, net: Network, names: Dict[str, str]
) -> _Fragment:
    if isinstance(expr, Elem):
        name = names[path]
        net.add_component(ProcessComponent(expr.resolved, name))
        return _Fragment(f"{name}.{START_PORT}", f"{name}.{STOP_PORT}")

    if isinstance(expr, Seq):
        left = _require(_build(expr.left, path + "0", net, names), path + "0")
        right = _require(_build(expr.right, path + "1", net, names), path + "1")
        net.merge(right.entry, left.exit)
        return _Fragment(left.entry, right.exit)

    if isinstance(expr, Par):
        par = net.add_component(fork_gate(instance_name("par", path))).name
        left = _require(_build(expr.left, path + "0", net, names), path + "0")
        right = _require(_build(expr.right, path + "1", net, names), path + "1")
        net.merge(left.entry, f"{par}.go")
        net.merge(right.entry, f"{par}.go")
        amp = net.add_component(amp_connector(instance_name("amp", path))).name
        net.bind(PortRef(amp, "x"), left.exit)
        net.bind(PortRef(amp, "y"), right.exit)
        net.bind(PortRef(par, "done"), f"{amp}.z")
        return _Fragment(f"{par}.entry", f"{amp}.z")

    if isinstance(expr, Alt):
        at = net.add_component(
            at_connector(expr.chooser_policy, instance_name("at", path))
        ).name
        left = _require(_build(expr.left, path + "0", net, names), path + "0")
        right = _require(_build(expr.right, path + "1", net, names), path + "1")
        net.merge(left.entry, f"{at}.o_left")
        net.merge(right.entry, f"{at}.o_right")
        plus = net.add_component(plus_connector(instance_name("plus", path))).name
        net.bind(PortRef(plus, "x"), left.exit)
        net.bind(PortRef(plus, "y"), right.exit)
        return _Fragment(f"{at}.ent", f"{plus}.z")

    if isinstance(expr, (LoopAuto, LoopNonAuto)):
        name = instance_name("delay", path)
        if isinstance(expr, LoopAuto):
            delay = delay_component(expr.delay_ticks, AUTONOMOUS, name)
        else:
            delay = delay_component(mode=expr.restart_policy, name=name)
        net.add_component(delay)
        body = _require(_build(expr.body, path + "0", net, names), path + "0")
        net.merge(body.entry, f"{name}.entD")
        net.bind(PortRef(name, "extD"), body.exit)
        if isinstance(expr, LoopAuto):
            return _Fragment(None, None)
        return _Fragment(f"{name}.entP", f"{name}.extP")

    raise TypeError(
        f"`expr` expects a process expression, but got {type(expr).__name__}."
    )


def compile(
    expr: ProcessExpr, links: Iterable[Link] = (), name: str = "network"
) -> Network:
    """
    Realize a process expression as a network of components.

    - a sequence hands the exit of its left operand to the entry of its right
      operand, without any connector;
    - a parallel composition fans its entry out to both operands through a
      gate that ignores new starts until ``&`` has joined their exits;
    - an alternative routes its entry through ``@`` to one operand and merges
      their exits with ``+``;
    - an autonomous loop closes its body through a timer Delay and has neither
      entry nor exit;
    - a non-autonomous loop gates external starts through a Delay and forwards
      the body's exit.

    Leaves used more than once are renamed with their path in the tree (see
    :func:`leaf_names`). Channels are named ``instance.port`` after their
    driver.

    Args:
        expr (ProcessExpr): The composition.
        links (Iterable[Tuple[str, str]]): Extra data wires
            ``("P.out", "Q.in")`` between instances.
        name (str): Name of the network.

    Raises:
        InvalidSpecError: If an elementary process does not validate.
        NoEntryPointError: If an autonomous loop is nested in another operator.
        NameCollisionError: If two instances would share a name.
        WireTypeMismatchError: If a data link connects ports of different types.
    """
    net = Network(name)
    fragment = _build(expr, "", net, leaf_names(expr))
    net.entry, net.exit = fragment.entry, fragment.exit
    for source, sink in links:
        net.connect(source, sink)
    logger.debug(
        f"Compiled {name!r}: {len(net.components)} components, "
        f"{len(net.channels)} channels, entry={net.entry}, exit={net.exit}"
    )
    return net


def entry_of(p: Union[ProcessExpr, ElementaryProcessSpec]) -> str:
    """
    Return the entry channel of a process.

    For an elementary specification this is its ``start`` port. For a
    composition it is the channel activating the compiled network, e.g. the
    entry of the left operand of a sequence or the input of the ``@``
    connector of an alternative.

    Raises:
        NoEntryPointError: If `p` is an autonomous loop.
    """
    if isinstance(p, ElementaryProcessSpec):
        return START_PORT
    if is_autonomous(p):
        raise NoEntryPointError("An autonomous loop has no entry point.")
    return compile(p).entry


def exit_of(p: Union[ProcessExpr, ElementaryProcessSpec]) -> str:
    """
    Return the exit channel of a process; ``stop`` for an elementary one.

    Raises:
        NoEntryPointError: If `p` is an autonomous loop.
    """
    if isinstance(p, ElementaryProcessSpec):
        return STOP_PORT
    if is_autonomous(p):
        raise NoEntryPointError("An autonomous loop has no exit point.")
    return compile(p).exit
