# procview/export/__init__.py

from .dot import export_dot
from .pnml import Arc, PetriNetModel, Place, Transition, build_petri_net, export_pnml
from .reachability import ReachabilityResult, fired_processes, reachability, to_snakes
from .trace_format import (
    STRUCTURED,
    TEXT,
    TRACE_FORMATS,
    format_trace,
    parse_type,
    trace_from_dict,
    trace_from_json,
    trace_to_dict,
    trace_to_json,
    trace_to_text,
)

__all__ = [
    "Arc",
    "PetriNetModel",
    "Place",
    "ReachabilityResult",
    "STRUCTURED",
    "TEXT",
    "TRACE_FORMATS",
    "Transition",
    "build_petri_net",
    "export_dot",
    "export_pnml",
    "fired_processes",
    "format_trace",
    "parse_type",
    "reachability",
    "to_snakes",
    "trace_from_dict",
    "trace_from_json",
    "trace_to_dict",
    "trace_to_json",
    "trace_to_text",
]

# Please keep this list sorted
assert __all__ == sorted(__all__)
