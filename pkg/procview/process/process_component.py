from typing import Any, Dict, Mapping, Optional, Tuple

from procview.config import START_PORT, STOP_PORT
from procview.errors import InvalidSpecError
from procview.process.assumption import MsgBound
from procview.process.component import (
    WEAK,
    Component,
    ProcessMode,
    StepResult,
    StepWarning,
)
from procview.process.expr import Scope, evaluate, evaluate_bool
from procview.process.spec import (
    INPUT,
    OUTPUT,
    Assignment,
    ChannelDecl,
    ElementaryProcessSpec,
    buffer_name,
    validate,
)
from procview.streams.interval import EMPTY, TimeInterval
from procview.streams.message import EV, EVENT, Message

ACTIVE_KEY = "active"

# Transition rules of a process component
RULE_FINISH = "finish"  # active and ending: stop fires
RULE_CALC = "calc"  # active, not ending
RULE_IDLE = "idle"  # inactive, no start
RULE_START = "start"  # inactive, start


class ProcessComponent(Component):
    """
    Component realizing an elementary process.

    Its ports are the channels of the specification plus the entry ``start``
    and the exit ``stop``, both of type Event. The state holds the ``active``
    flag, one ``xBuf`` per data input and the local variables.

    At every tick exactly one rule fires:

    - active and the ending predicate holds: ``stop`` emits ``⟨√⟩`` and the
      final effect is applied, the process becomes inactive (`finish`);
    - active otherwise: the calc effect is applied (`calc`);
    - inactive without a start event: nothing is emitted (`idle`);
    - inactive with a start event: the restart assignments are applied and
      the process becomes active, still emitting nothing (`start`).

    While inactive, every nonempty input interval overwrites the buffer of its
    channel with its first message, including on the tick of a start event.
    A start event received while active is ignored with a
    ``RestartWhileActive`` warning.

    Args:
        spec (ElementaryProcessSpec): A specification for which
            :func:`validate` returns no diagnostics.
        name (str, optional): Instance name, defaults to the process name.

    Raises:
        InvalidSpecError: If the specification does not validate.
    """

    kind = "process"
    causality = WEAK

    def __init__(self, spec: ElementaryProcessSpec, name: Optional[str] = None):
        diagnostics = validate(spec)
        if diagnostics:
            raise InvalidSpecError(spec.name, diagnostics)
        in_ports = (ChannelDecl(START_PORT, EVENT, INPUT),) + spec.inputs
        out_ports = (ChannelDecl(STOP_PORT, EVENT, OUTPUT),) + spec.outputs
        assumptions = (MsgBound(1, START_PORT),) + spec.behavior.assumption
        super().__init__(name or spec.name, in_ports, out_ports, assumptions)
        self.spec = spec
        self.params: Dict[str, Message] = spec.param_values()
        self._buffered = tuple(c.name for c in spec.inputs)

        self.register_state(ACTIVE_KEY, False)
        for b in spec.buffers:
            self.register_state(b.name, b.init_value)
        for v in spec.behavior.locals:
            self.register_state(v.name, v.init_value)

    def mode(self, state: Mapping[str, Any]) -> ProcessMode:
        return ProcessMode.of(state[ACTIVE_KEY])

    def _scope(self, state: Mapping[str, Any], inputs) -> Scope:
        values = {**self.params, **{k: v for k, v in state.items() if k != ACTIVE_KEY}}
        fallback = {c: state[buffer_name(c)] for c in self._buffered}
        return Scope(values, inputs, fallback)

    def assumption_scope(self, inputs: Mapping[str, TimeInterval]) -> Scope:
        fallback = {p.name: p.msg_type.default() for p in self.in_ports}
        return Scope(dict(self.params), inputs, fallback)

    def _apply(
        self, block: Tuple[Assignment, ...], scope: Scope
    ) -> Tuple[Dict[str, TimeInterval], Dict[str, Message]]:
        """Evaluate a block simultaneously; outputs not assigned stay empty."""
        outputs = {c.name: EMPTY for c in self.spec.outputs}
        updates = {}
        for a in block:
            value = evaluate(a.expr, scope)
            if a.target in outputs:
                outputs[a.target] = value
            else:
                updates[a.target] = value
        return outputs, updates

    def transition(
        self, state: Mapping[str, Any], t: int, inputs: Mapping[str, TimeInterval]
    ) -> StepResult:
        start = inputs.get(START_PORT, EMPTY)
        behavior = self.spec.behavior
        next_state = dict(state)

        if state[ACTIVE_KEY]:
            warnings = ()
            if start:
                warnings = (
                    StepWarning(
                        "RestartWhileActive",
                        f"start event ignored, {self.name!r} is still active",
                    ),
                )
            scope = self._scope(state, inputs)
            if evaluate_bool(behavior.pr_ending, scope):
                outputs, updates = self._apply(behavior.final_effect, scope)
                next_state.update(updates)
                next_state[ACTIVE_KEY] = False
                outputs[STOP_PORT] = TimeInterval((EV,))
                return StepResult(outputs, next_state, warnings, RULE_FINISH)
            outputs, updates = self._apply(behavior.pr_calc, scope)
            next_state.update(updates)
            outputs[STOP_PORT] = EMPTY
            return StepResult(outputs, next_state, warnings, RULE_CALC)

        for channel in self._buffered:
            interval = inputs.get(channel, EMPTY)
            if interval:
                next_state[buffer_name(channel)] = interval.messages[0]
        outputs = {name: EMPTY for name in self.out_port_names}
        if not start:
            return StepResult(outputs, next_state, (), RULE_IDLE)

        # restart assignments see the buffers updated on this tick
        _, updates = self._apply(behavior.init_process, self._scope(next_state, inputs))
        next_state.update(updates)
        next_state[ACTIVE_KEY] = True
        return StepResult(outputs, next_state, (), RULE_START)

    def extra_repr(self) -> str:
        return f"{super().extra_repr()}, spec={self.spec.name!r}"


def to_component(
    spec: ElementaryProcessSpec, name: Optional[str] = None
) -> ProcessComponent:
    """
    Turn an elementary process specification into its component.

    Example::

        >>> comp = to_component(adder)
        >>> comp.in_port_names, comp.out_port_names
        (('start', 'a', 'b'), ('stop', 'sum'))

    Raises:
        InvalidSpecError: If :func:`validate` reports diagnostics.
    """
    return ProcessComponent(spec, name)
