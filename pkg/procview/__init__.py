# procview/__init__.py

from procview import analysis, composition, dsl, export, process, simulation, streams
from procview.analysis import measure_wcet, wcet
from procview.composition import (
    Alt,
    Elem,
    LoopAuto,
    LoopNonAuto,
    Network,
    Par,
    Seq,
    compile,
)
from procview.dsl import SpecDocument, parse, print_document
from procview.process import ElementaryProcessSpec, validate
from procview.serialization import load, save
from procview.simulation import EnvInputs, Trace, run

__all__ = [
    "Alt",
    "Elem",
    "ElementaryProcessSpec",
    "EnvInputs",
    "LoopAuto",
    "LoopNonAuto",
    "Network",
    "Par",
    "Seq",
    "SpecDocument",
    "Trace",
    "analysis",
    "compile",
    "composition",
    "dsl",
    "export",
    "load",
    "measure_wcet",
    "parse",
    "print_document",
    "process",
    "run",
    "save",
    "simulation",
    "streams",
    "validate",
    "wcet",
]

# Please keep this list sorted
assert __all__ == sorted(__all__)
