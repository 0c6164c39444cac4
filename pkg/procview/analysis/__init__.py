# procview/analysis/__init__.py

from .activity import (
    ANY,
    COMPONENT_ACTIVE,
    EXACT,
    LOWER,
    STREAM_EXISTENTIAL,
    UPPER,
    active,
    active_bounded,
    active_count,
    active_on,
    active_only_on,
    active_set,
    activity_profile,
    disjoint_outputs_check,
)
from .measure import (
    activation_latency,
    connector_costs,
    default_input_space,
    measure_wcet,
    measured_bounds,
)
from .query import ActivityQuery, ActivityResult, evaluate_query, parse_query
from .wcet import MEASURED, ZERO, WcetNode, WcetReport, declared_bounds, wcet

__all__ = [
    "ANY",
    "ActivityQuery",
    "ActivityResult",
    "COMPONENT_ACTIVE",
    "EXACT",
    "LOWER",
    "MEASURED",
    "STREAM_EXISTENTIAL",
    "UPPER",
    "WcetNode",
    "WcetReport",
    "ZERO",
    "activation_latency",
    "active",
    "active_bounded",
    "active_count",
    "active_on",
    "active_only_on",
    "active_set",
    "activity_profile",
    "connector_costs",
    "declared_bounds",
    "default_input_space",
    "disjoint_outputs_check",
    "evaluate_query",
    "measure_wcet",
    "measured_bounds",
    "parse_query",
    "wcet",
]

# Please keep this list sorted
assert __all__ == sorted(__all__)
