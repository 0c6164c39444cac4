# procview/simulation/__init__.py

from .env import ENTRY_ALIAS, EnvInputs, resolve_channel
from .runner import ASSUMPTION_VIOLATION, Violation, check_assumptions, run
from .scheduler import Schedule, dependency_graph, schedule
from .trace import ComponentPorts, Trace, TraceWarning

__all__ = [
    "ASSUMPTION_VIOLATION",
    "ComponentPorts",
    "ENTRY_ALIAS",
    "EnvInputs",
    "Schedule",
    "Trace",
    "TraceWarning",
    "Violation",
    "check_assumptions",
    "dependency_graph",
    "resolve_channel",
    "run",
    "schedule",
]

# Please keep this list sorted
assert __all__ == sorted(__all__)
