from typing import Any, Mapping

from procview.process.component import WEAK, Component, StepResult, StepWarning
from procview.process.spec import INPUT, OUTPUT, ChannelDecl
from procview.streams.interval import EMPTY, TimeInterval
from procview.streams.message import EV, EVENT


class PlusConnector(Component):
    """
    The ``+`` merge of the exits of an alternative.

    ``z`` fires on every tick where ``x`` or ``y`` is nonempty. The branches of
    an alternative never finish together; if they do, a single event is
    emitted and a ``MergeCollision`` warning is raised.
    """

    kind = "plus"
    label = "+"
    causality = WEAK

    def __init__(self, name: str = "plus"):
        super().__init__(
            name,
            (ChannelDecl("x", EVENT, INPUT), ChannelDecl("y", EVENT, INPUT)),
            (ChannelDecl("z", EVENT, OUTPUT),),
        )

    def transition(
        self, state: Mapping[str, Any], t: int, inputs: Mapping[str, TimeInterval]
    ) -> StepResult:
        x, y = bool(inputs.get("x", EMPTY)), bool(inputs.get("y", EMPTY))
        warnings = ()
        if x and y:
            warnings = (
                StepWarning(
                    "MergeCollision", "both branches finished on the same tick"
                ),
            )
        z = TimeInterval((EV,)) if x or y else EMPTY
        return StepResult({"z": z}, {}, warnings)


def plus_connector(name: str = "plus") -> PlusConnector:
    """Build the ``+`` merge connector."""
    return PlusConnector(name)
