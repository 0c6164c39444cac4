# procview/dsl/__init__.py

from .document import CompositionDecl, EnvDecl, EnvEvent, Span, SpecDocument
from .parser import check, parse, parse_file
from .printer import (
    print_composition,
    print_document,
    print_env,
    print_process,
    print_process_expr,
)

__all__ = [
    "CompositionDecl",
    "EnvDecl",
    "EnvEvent",
    "Span",
    "SpecDocument",
    "check",
    "parse",
    "parse_file",
    "print_composition",
    "print_document",
    "print_env",
    "print_process",
    "print_process_expr",
]

# Please keep this list sorted
assert __all__ == sorted(__all__)
