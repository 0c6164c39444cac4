from typing import List

from procview._utils import node_id
from procview.composition.network import Network
from procview.config import CONTROL_COLOR, DATA_COLOR
from procview.process.process_component import ProcessComponent
from procview.streams.message import MsgKind


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _endpoint(channel: str) -> str:
    return node_id("ext", channel)


def export_dot(n: Network) -> str:
    """
    Render a network as a Graphviz digraph.

    Every component is one node: elementary processes are boxes, connectors
    are orange circles labelled ``fork``, ``&``, ``@``, ``+`` or ``Delay``.
    Every wire is one edge labelled ``source port -> sink port``; Event wires
    are drawn orange, data wires black. External channels (the entry and unlinked data
    inputs) and the exit are drawn as orange points. Nodes and edges follow
    the instance order of the network, so equal networks give identical text.

    Example::

        >>> print(export_dot(compile(Seq(Elem(p), Elem(q)))))
        digraph "network" {
          rankdir=LR;
          "P" [label="P", shape=box];
          ...
    """
    lines: List[str] = [f"digraph {_quote(n.name)} {{", "  rankdir=LR;"]
    for name, component in n.components.items():
        if isinstance(component, ProcessComponent):
            attrs = f"label={_quote(name)}, shape=box"
        else:
            label = f"{component.label}\\n{name}"
            attrs = (
                f'label="{label}", shape=circle, '
                f"color={CONTROL_COLOR}, fontcolor={CONTROL_COLOR}"
            )
        lines.append(f"  {_quote(node_id(name))} [{attrs}];")

    endpoints = list(n.external_inputs)
    if n.exit is not None:
        endpoints.append(n.exit)
    for channel in endpoints:
        role = "entry" if channel == n.entry else "exit" if channel == n.exit else ""
        xlabel = role or channel
        lines.append(
            f"  {_quote(_endpoint(channel))} [shape=point, color={CONTROL_COLOR}, "
            f"xlabel={_quote(xlabel)}];"
        )

    for wire in n.wires:
        msg_type = n.channels[wire.channel].msg_type
        color = CONTROL_COLOR if msg_type.kind is MsgKind.EVENT else DATA_COLOR
        if wire.source is None:
            tail, tail_port = _endpoint(wire.channel), ""
        else:
            tail, tail_port = node_id(wire.source.component), wire.source.port
        label = f"{tail_port} -> {wire.sink.port}" if tail_port else wire.sink.port
        lines.append(
            f"  {_quote(tail)} -> {_quote(node_id(wire.sink.component))} "
            f"[label={_quote(label)}, color={color}];"
        )
    if n.exit is not None:
        source = n.channels[n.exit].source
        if source is not None:
            lines.append(
                f"  {_quote(node_id(source.component))} -> "
                f"{_quote(_endpoint(n.exit))} "
                f"[label={_quote(source.port)}, color={CONTROL_COLOR}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
