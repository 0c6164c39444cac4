# procview/composition/__init__.py

from .compiler import compile, entry_of, exit_of
from .connectors import (
    AmpConnector,
    AtConnector,
    AutonomousDelay,
    ForkGate,
    GatedDelay,
    PlusConnector,
    amp_connector,
    at_connector,
    delay_component,
    fork_gate,
    plus_connector,
)
from .expr import (
    Alt,
    Elem,
    LoopAuto,
    LoopNonAuto,
    Par,
    ProcessExpr,
    Seq,
    depth,
    iter_paths,
    leaf_names,
    leaves,
)
from .network import Channel, Network, PortRef, Wire
from .policy import ChooserPolicy, RestartPolicy

__all__ = [
    "Alt",
    "AmpConnector",
    "AtConnector",
    "AutonomousDelay",
    "Channel",
    "ChooserPolicy",
    "Elem",
    "ForkGate",
    "GatedDelay",
    "LoopAuto",
    "LoopNonAuto",
    "Network",
    "Par",
    "PlusConnector",
    "PortRef",
    "ProcessExpr",
    "RestartPolicy",
    "Seq",
    "Wire",
    "amp_connector",
    "at_connector",
    "compile",
    "delay_component",
    "depth",
    "entry_of",
    "exit_of",
    "fork_gate",
    "iter_paths",
    "leaf_names",
    "leaves",
    "plus_connector",
]

# Please keep this list sorted
assert __all__ == sorted(__all__)
