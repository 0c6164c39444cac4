# procview/process/__init__.py

from .assumption import Assumption, IntervalPredicate, MsgBound
from .component import (
    STRICT,
    WEAK,
    Component,
    ProcessMode,
    StepResult,
    StepWarning,
    step,
)
from .expr import (
    EMPTY_INTERVAL,
    EVENT_INTERVAL,
    FALSE,
    TRUE,
    Binary,
    Cond,
    Const,
    Count,
    Expr,
    Ft,
    IntervalLit,
    Present,
    Ref,
    Scope,
    Unary,
    const,
    evaluate,
    format_expr,
    infer,
    ref,
)
from .process_component import ProcessComponent, to_component
from .spec import (
    INPUT,
    OUTPUT,
    Assignment,
    BehaviorSpec,
    BufferDecl,
    ChannelDecl,
    Diagnostic,
    ElementaryProcessSpec,
    LocalDecl,
    ParamDecl,
    buffer_name,
    validate,
)

__all__ = [
    "Assignment",
    "Assumption",
    "BehaviorSpec",
    "Binary",
    "BufferDecl",
    "ChannelDecl",
    "Component",
    "Cond",
    "Const",
    "Count",
    "Diagnostic",
    "EMPTY_INTERVAL",
    "EVENT_INTERVAL",
    "ElementaryProcessSpec",
    "Expr",
    "FALSE",
    "Ft",
    "INPUT",
    "IntervalLit",
    "IntervalPredicate",
    "LocalDecl",
    "MsgBound",
    "OUTPUT",
    "ParamDecl",
    "Present",
    "ProcessComponent",
    "ProcessMode",
    "Ref",
    "STRICT",
    "Scope",
    "StepResult",
    "StepWarning",
    "TRUE",
    "Unary",
    "WEAK",
    "buffer_name",
    "const",
    "evaluate",
    "format_expr",
    "infer",
    "ref",
    "step",
    "to_component",
    "validate",
]

# Please keep this list sorted
assert __all__ == sorted(__all__)
