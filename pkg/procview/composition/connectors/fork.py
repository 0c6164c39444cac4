from typing import Any, FrozenSet, Mapping

from procview.process.component import WEAK, Component, StepResult, StepWarning
from procview.process.spec import INPUT, OUTPUT, ChannelDecl
from procview.streams.interval import EMPTY, TimeInterval
from procview.streams.message import EV, EVENT


class ForkGate(Component):
    """
    Fan-out of a parallel composition.

    A start on ``entry`` is forwarded to ``go``, which activates both
    operands, on the same tick. The gate then stays busy until the ``&`` join
    reports on ``done``. Starts arriving while it is busy, including on the
    tick the join fires, are dropped with a ``StartDropped`` warning. ``go``
    reads ``done`` only through the state, so the feedback from the join
    closes no same-tick loop.
    """

    kind = "fork"
    label = "fork"
    causality = WEAK

    def __init__(self, name: str = "par"):
        super().__init__(
            name,
            (ChannelDecl("entry", EVENT, INPUT), ChannelDecl("done", EVENT, INPUT)),
            (ChannelDecl("go", EVENT, OUTPUT),),
        )
        self.register_state("busy", False)

    def feedthrough(self, out_port: str) -> FrozenSet[str]:
        return frozenset({"entry"})

    def transition(
        self, state: Mapping[str, Any], t: int, inputs: Mapping[str, TimeInterval]
    ) -> StepResult:
        busy = state["busy"]
        started = bool(inputs.get("entry", EMPTY))
        accepted = started and not busy
        warnings = ()
        if started and busy:
            warnings = (StepWarning("StartDropped", "parallel branches still running"),)
        if inputs.get("done", EMPTY):
            busy = False
        return StepResult(
            {"go": TimeInterval((EV,)) if accepted else EMPTY},
            {"busy": busy or accepted},
            warnings,
        )


def fork_gate(name: str = "par") -> ForkGate:
    """Build the fan-out gate of a parallel composition."""
    return ForkGate(name)
