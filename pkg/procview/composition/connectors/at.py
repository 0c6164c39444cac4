from typing import Any, Mapping, Optional

from procview.composition.policy import LEFT, ChooserPolicy
from procview.process.component import WEAK, Component, StepResult
from procview.process.spec import INPUT, OUTPUT, ChannelDecl
from procview.streams.interval import EMPTY, TimeInterval
from procview.streams.message import EV, EVENT


class AtConnector(Component):
    """
    The ``@`` split choosing which branch of an alternative to start.

    Every tick with a nonempty ``ent`` interval counts as one event and is
    forwarded as ``⟨√⟩`` to exactly one of ``o_left`` and ``o_right``, chosen
    by the :class:`ChooserPolicy` from the number of events seen before.
    """

    kind = "at"
    label = "@"
    causality = WEAK

    def __init__(self, policy: Optional[ChooserPolicy] = None, name: str = "at"):
        super().__init__(
            name,
            (ChannelDecl("ent", EVENT, INPUT),),
            (
                ChannelDecl("o_left", EVENT, OUTPUT),
                ChannelDecl("o_right", EVENT, OUTPUT),
            ),
        )
        self.policy = policy or ChooserPolicy.round_robin()
        self.register_state("count", 0)

    def transition(
        self, state: Mapping[str, Any], t: int, inputs: Mapping[str, TimeInterval]
    ) -> StepResult:
        if not inputs.get("ent", EMPTY):
            return StepResult({"o_left": EMPTY, "o_right": EMPTY}, dict(state))
        k = state["count"]
        fire = TimeInterval((EV,))
        if self.policy.choose(k) == LEFT:
            outputs = {"o_left": fire, "o_right": EMPTY}
        else:
            outputs = {"o_left": EMPTY, "o_right": fire}
        return StepResult(outputs, {"count": k + 1})

    def extra_repr(self) -> str:
        return f"{super().extra_repr()}, policy={self.policy}"


def at_connector(
    policy: Optional[ChooserPolicy] = None, name: str = "at"
) -> AtConnector:
    """Build the ``@`` split connector with the given chooser policy."""
    return AtConnector(policy, name)
