# procview/composition/connectors/__init__.py

from .amp import AmpConnector, amp_connector
from .at import AtConnector, at_connector
from .delay import AUTONOMOUS, AutonomousDelay, GatedDelay, delay_component
from .fork import ForkGate, fork_gate
from .plus import PlusConnector, plus_connector

__all__ = [
    "AUTONOMOUS",
    "AmpConnector",
    "AtConnector",
    "AutonomousDelay",
    "ForkGate",
    "GatedDelay",
    "PlusConnector",
    "amp_connector",
    "at_connector",
    "delay_component",
    "fork_gate",
    "plus_connector",
]

# Please keep this list sorted
assert __all__ == sorted(__all__)
