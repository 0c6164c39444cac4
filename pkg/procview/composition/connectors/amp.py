from typing import Any, Mapping

from procview.process.assumption import MsgBound
from procview.process.component import WEAK, Component, StepResult
from procview.process.spec import INPUT, OUTPUT, ChannelDecl
from procview.streams.interval import EMPTY, TimeInterval
from procview.streams.message import EV, EVENT


class AmpConnector(Component):
    """
    The ``&`` join of two exits.

    Emits ``⟨√⟩`` on ``z`` once both ``x`` and ``y`` have delivered an event,
    either on the same tick or one after another, and then forgets both
    arrivals. Each input is assumed to carry at most one message per tick.

    Example:
        >>> amp = AmpConnector()
        >>> amp.step(3, {"x": TimeInterval.of("ev"), "y": EMPTY}).outputs["z"]
        TimeInterval(messages=())
        >>> amp.step(5, {"x": EMPTY, "y": TimeInterval.of("ev")}).outputs["z"]
        TimeInterval(messages=(Message(kind=<MsgKind.EVENT: 'Event'>, value=None),))
    """

    kind = "amp"
    label = "&"
    causality = WEAK

    def __init__(self, name: str = "amp"):
        super().__init__(
            name,
            (ChannelDecl("x", EVENT, INPUT), ChannelDecl("y", EVENT, INPUT)),
            (ChannelDecl("z", EVENT, OUTPUT),),
            (MsgBound(1, "x"), MsgBound(1, "y")),
        )
        self.register_state("xReady", False)
        self.register_state("yReady", False)

    def transition(
        self, state: Mapping[str, Any], t: int, inputs: Mapping[str, TimeInterval]
    ) -> StepResult:
        x_ready = state["xReady"] or bool(inputs.get("x", EMPTY))
        y_ready = state["yReady"] or bool(inputs.get("y", EMPTY))
        if x_ready and y_ready:
            return StepResult(
                {"z": TimeInterval((EV,))}, {"xReady": False, "yReady": False}
            )
        return StepResult({"z": EMPTY}, {"xReady": x_ready, "yReady": y_ready})


def amp_connector(name: str = "amp") -> AmpConnector:
    """Build the ``&`` join connector."""
    return AmpConnector(name)
