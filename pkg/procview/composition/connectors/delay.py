from typing import Any, FrozenSet, Mapping, Optional, Union

from procview.composition.policy import RestartPolicy
from procview.errors import ZenoRiskError
from procview.process.component import STRICT, Component, StepResult, StepWarning
from procview.process.spec import INPUT, OUTPUT, ChannelDecl
from procview.streams.interval import EMPTY, TimeInterval
from procview.streams.message import EV, EVENT

AUTONOMOUS = "autonomous"


class AutonomousDelay(Component):
    """
    Timer closing an autonomous loop.

    Starts the body on ``entD`` at tick 0 and again exactly `d` ticks after
    each event on ``extD``. The component is strict-causal: ``entD`` at tick
    ``t`` depends on earlier inputs only.

    Args:
        d (int): Delay in ticks, at least 1.

    Raises:
        ZenoRiskError: If `d` is below 1.
    """

    kind = "delay"
    label = "Delay"
    causality = STRICT

    def __init__(self, d: int, name: str = "delay"):
        if not isinstance(d, int) or isinstance(d, bool):
            raise TypeError(f"`d` expects an int, but got {type(d).__name__}.")
        if d < 1:
            raise ZenoRiskError(f"A loop delay needs at least one tick, but got d={d}.")
        super().__init__(
            name,
            (ChannelDecl("extD", EVENT, INPUT),),
            (ChannelDecl("entD", EVENT, OUTPUT),),
        )
        self.d = d
        self.register_state("pending", 0)

    def transition(
        self, state: Mapping[str, Any], t: int, inputs: Mapping[str, TimeInterval]
    ) -> StepResult:
        pending = state["pending"]
        fires = pending == t
        if fires:
            pending = None
        if inputs.get("extD", EMPTY):
            pending = t + self.d
        return StepResult(
            {"entD": TimeInterval((EV,)) if fires else EMPTY}, {"pending": pending}
        )

    def extra_repr(self) -> str:
        return f"{super().extra_repr()}, d={self.d}"


class GatedDelay(Component):
    """
    Restart gate of a non-autonomous loop.

    An external start on ``entP`` reaches the body on ``entD`` at least one
    tick later, and no earlier than ``min_gap_ticks`` after the previous
    activation. The body's exit on ``extD`` is forwarded to ``extP`` on the
    same tick. A start arriving while the body runs, or while an activation is
    pending, is dropped with a ``StartDropped`` warning unless the policy
    allows restarts.
    """

    kind = "delay"
    label = "Delay"
    causality = STRICT

    def __init__(self, policy: Optional[RestartPolicy] = None, name: str = "delay"):
        super().__init__(
            name,
            (ChannelDecl("entP", EVENT, INPUT), ChannelDecl("extD", EVENT, INPUT)),
            (ChannelDecl("entD", EVENT, OUTPUT), ChannelDecl("extP", EVENT, OUTPUT)),
        )
        self.policy = policy or RestartPolicy()
        self.register_state("pending", None)
        self.register_state("running", False)
        self.register_state("last_activation", None)

    def feedthrough(self, out_port: str) -> FrozenSet[str]:
        if out_port == "extP":
            return frozenset({"extD"})
        return frozenset()

    def transition(
        self, state: Mapping[str, Any], t: int, inputs: Mapping[str, TimeInterval]
    ) -> StepResult:
        pending = state["pending"]
        running = state["running"]
        last = state["last_activation"]
        finished = bool(inputs.get("extD", EMPTY))
        outputs = {
            "entD": TimeInterval((EV,)) if pending == t else EMPTY,
            "extP": TimeInterval((EV,)) if finished else EMPTY,
        }

        if pending == t:
            pending, running, last = None, True, t
        if finished:
            running = False

        warnings = ()
        if inputs.get("entP", EMPTY):
            busy = running or pending is not None
            if busy and not self.policy.allow_restart_while_running:
                warnings = (StepWarning("StartDropped", "body still running"),)
            else:
                earliest = t + 1
                if last is not None:
                    earliest = max(earliest, last + self.policy.min_gap_ticks)
                pending = earliest
        return StepResult(
            outputs,
            {"pending": pending, "running": running, "last_activation": last},
            warnings,
        )

    def extra_repr(self) -> str:
        return f"{super().extra_repr()}, {self.policy}"


def delay_component(
    d: int = 1, mode: Union[str, RestartPolicy] = AUTONOMOUS, name: str = "delay"
) -> Component:
    """
    Build the Delay component of a loop.

    Args:
        d (int): Delay of an autonomous loop in ticks; must be at least 1.
        mode (str | RestartPolicy): ``"autonomous"`` for a self-starting timer,
            or the :class:`RestartPolicy` of a non-autonomous loop.

    Raises:
        ZenoRiskError: If `d` is below 1.
    """
    if d < 1:
        raise ZenoRiskError(f"A loop delay needs at least one tick, but got d={d}.")
    if isinstance(mode, RestartPolicy):
        return GatedDelay(mode, name)
    if mode != AUTONOMOUS:
        raise ValueError(
            f"`mode` expects 'autonomous' or a RestartPolicy, but got {mode!r}."
        )
    return AutonomousDelay(d, name)
