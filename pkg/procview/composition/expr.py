from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, Tuple, Union

from procview.composition.policy import ChooserPolicy, RestartPolicy
from procview.errors import ZenoRiskError
from procview.process.expr import format_message
from procview.process.spec import ElementaryProcessSpec
from procview.streams.message import Message


@dataclass(frozen=True)
class Elem:
    """
    Leaf of a composition: an elementary process, optionally with bound
    parameter values.
    """

    spec: ElementaryProcessSpec
    args: Tuple[Tuple[str, Message], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "args", tuple((k, Message.coerce(v)) for k, v in self.args)
        )

    @property
    def resolved(self) -> ElementaryProcessSpec:
        """The specification with `args` bound to its parameters."""
        if not self.args:
            return self.spec
        return self.spec.bind(**dict(self.args))

    @property
    def label(self) -> str:
        if not self.args:
            return self.spec.name
        bound = ", ".join(f"{k}={format_message(v)}" for k, v in self.args)
        return f"{self.spec.name}({bound})"


@dataclass(frozen=True)
class Seq:
    left: "ProcessExpr"
    right: "ProcessExpr"


@dataclass(frozen=True)
class Par:
    left: "ProcessExpr"
    right: "ProcessExpr"


@dataclass(frozen=True)
class Alt:
    left: "ProcessExpr"
    right: "ProcessExpr"
    chooser_policy: ChooserPolicy = field(default_factory=ChooserPolicy.round_robin)


@dataclass(frozen=True)
class LoopAuto:
    body: "ProcessExpr"
    delay_ticks: int = 1

    def __post_init__(self):
        if self.delay_ticks < 1:
            raise ZenoRiskError(
                f"A loop delay needs at least one tick, but got {self.delay_ticks}."
            )


@dataclass(frozen=True)
class LoopNonAuto:
    body: "ProcessExpr"
    restart_policy: RestartPolicy = field(default_factory=RestartPolicy)


ProcessExpr = Union[Elem, Seq, Par, Alt, LoopAuto, LoopNonAuto]


def subexpressions(expr: ProcessExpr) -> Tuple[ProcessExpr, ...]:
    if isinstance(expr, (Seq, Par, Alt)):
        return (expr.left, expr.right)
    if isinstance(expr, (LoopAuto, LoopNonAuto)):
        return (expr.body,)
    if isinstance(expr, Elem):
        return ()
    raise TypeError(
        f"`expr` expects a process expression, but got {type(expr).__name__}."
    )


def iter_paths(expr: ProcessExpr, path: str = "") -> Iterator[Tuple[str, ProcessExpr]]:
    """
    Yield ``(path, node)`` pairs in pre-order.

    The path of the root is ``""``; the children of a node at path ``p`` are at
    ``p + "0"`` and ``p + "1"``.
    """
    yield path, expr
    for i, child in enumerate(subexpressions(expr)):
        yield from iter_paths(child, path + str(i))


def leaves(expr: ProcessExpr) -> Iterator[Tuple[str, Elem]]:
    for path, node in iter_paths(expr):
        if isinstance(node, Elem):
            yield path, node


def instance_name(kind: str, path: str) -> str:
    """Name of the connector of `kind` introduced at `path`."""
    return f"{kind}_{path}" if path else kind


def leaf_names(expr: ProcessExpr) -> Dict[str, str]:
    """
    Map the path of every leaf to its instance name.

    A process used once keeps its name; repeated uses get their path as suffix.
    """
    found = list(leaves(expr))
    counts = Counter(e.spec.name for _, e in found)
    return {
        path: (
            e.spec.name if counts[e.spec.name] == 1 else f"{e.spec.name}_{path or 'r'}"
        )
        for path, e in found
    }


def is_autonomous(expr: ProcessExpr) -> bool:
    return isinstance(expr, LoopAuto)


def depth(expr: ProcessExpr) -> int:
    children = subexpressions(expr)
    return 1 + max((depth(c) for c in children), default=0)
