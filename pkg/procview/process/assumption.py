from dataclasses import dataclass
from typing import Mapping, Union

from procview.process.expr import Expr, Scope, evaluate_bool, format_expr
from procview.streams.interval import EMPTY, TimeInterval


@dataclass(frozen=True)
class MsgBound:
    """
    Assumption ``msg(bound, channel)``: the channel carries at most `bound`
    messages in every time interval.
    """

    bound: int
    channel: str

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError(f"`bound` must be non-negative, but got {self.bound}.")

    def holds(self, inputs: Mapping[str, TimeInterval], scope: Scope) -> bool:
        return len(inputs.get(self.channel, EMPTY)) <= self.bound

    def __str__(self):
        return f"msg({self.bound}, {self.channel})"


@dataclass(frozen=True)
class IntervalPredicate:
    """Assumption given as a Bool expression checked at every tick."""

    expr: Expr

    def holds(self, inputs: Mapping[str, TimeInterval], scope: Scope) -> bool:
        return evaluate_bool(self.expr, scope)

    def __str__(self):
        return format_expr(self.expr)


Assumption = Union[MsgBound, IntervalPredicate]
