from collections import OrderedDict
from copy import deepcopy
from dataclasses import dataclass, field
from enum import Enum
from typing import (
    Any,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Tuple,
)

from procview.process.assumption import Assumption
from procview.process.expr import Scope
from procview.process.spec import INPUT, OUTPUT, ChannelDecl
from procview.streams.interval import EMPTY, TimeInterval

WEAK = "weak"
STRICT = "strict"


class ProcessMode(Enum):
    """The two modes of a process: exactly the values of its ``active`` flag."""

    INACTIVE = False
    ACTIVE = True

    @property
    def active(self) -> bool:
        return self.value

    @classmethod
    def of(cls, active: bool) -> "ProcessMode":
        return cls.ACTIVE if active else cls.INACTIVE

    def __str__(self):
        return "Active" if self.value else "Inactive"


@dataclass(frozen=True)
class StepWarning:
    """A runtime warning raised by one step of a component."""

    kind: str
    message: str


@dataclass
class StepResult:
    """
    Outcome of one step of a component.

    Attributes:
        outputs (Dict[str, TimeInterval]): Interval emitted on every out port.
        next_state (Dict[str, Any]): State after the tick.
        warnings (Tuple[StepWarning, ...]): Warnings raised during the tick.
        rule (str | None): Name of the transition rule that fired, if the
            component distinguishes them.
    """

    outputs: Dict[str, TimeInterval]
    next_state: Dict[str, Any]
    warnings: Tuple[StepWarning, ...] = ()
    rule: Optional[str] = field(default=None)


class Component:
    r"""Base class for all executable components.

    A component is a step machine with named, typed ports. At every tick it
    reads one :class:`TimeInterval` per input port and emits one per output
    port. Subclasses implement :meth:`transition` as a pure function of the
    state, the tick and the inputs; :meth:`step` applies it to the state held by
    the component itself.

    Weak-causal components may read current-tick inputs to produce current-tick
    outputs. Strict-causal components never do: their outputs at tick ``t``
    depend on their state only. Finer-grained dependencies are declared
    per output port by overriding :meth:`feedthrough`.

    Subclasses register their state variables in ``__init__``::

        class Toggle(Component):
            kind = "toggle"

            def __init__(self):
                super().__init__("toggle", [ChannelDecl("x", EVENT, "input")],
                                 [ChannelDecl("y", BOOL, "output")])
                self.register_state("on", False)

            def transition(self, state, t, inputs):
                on = state["on"] != bool(inputs.get("x", EMPTY))
                return StepResult({"y": singleton(Message.of_bool(on))},
                                  {"on": on})
    """

    kind: str = "component"
    label: Optional[str] = None
    causality: str = WEAK

    def __init__(
        self,
        name: str,
        in_ports: Iterable[ChannelDecl] = (),
        out_ports: Iterable[ChannelDecl] = (),
        assumptions: Iterable[Assumption] = (),
    ) -> None:
        self.name = name
        self.in_ports: Tuple[ChannelDecl, ...] = tuple(in_ports)
        self.out_ports: Tuple[ChannelDecl, ...] = tuple(out_ports)
        self.assumptions: Tuple[Assumption, ...] = tuple(assumptions)
        for port in self.in_ports:
            if port.direction != INPUT:
                raise ValueError(f"In port {port.name!r} is declared as an output.")
        for port in self.out_ports:
            if port.direction != OUTPUT:
                raise ValueError(f"Out port {port.name!r} is declared as an input.")
        self._initial_state: "OrderedDict[str, Any]" = OrderedDict()
        self._state: "OrderedDict[str, Any]" = OrderedDict()

    def register_state(self, name: str, value: Any) -> None:
        r"""Add a state variable with its initial value.

        Args:
            name (str): Name of the state variable.
            value (Any): Initial value, restored by :meth:`reset`.

        Raises:
            KeyError: If the variable already exists.
        """
        if not isinstance(name, str):
            raise TypeError(f"`name` expects a str, but got {type(name).__name__}.")
        if name in self._initial_state:
            raise KeyError(f"State variable {name!r} already exists.")
        self._initial_state[name] = value
        self._state[name] = deepcopy(value)

    @property
    def state(self) -> Dict[str, Any]:
        return dict(self._state)

    def initial_state(self) -> Dict[str, Any]:
        return deepcopy(dict(self._initial_state))

    def state_dict(self) -> Dict[str, Any]:
        """Return a copy of the current state, keyed by variable name."""
        return deepcopy(dict(self._state))

    def load_state_dict(self, state: Mapping[str, Any]) -> None:
        """
        Replace the current state.

        Raises:
            KeyError: If `state` misses a variable or has an unexpected one.
        """
        missing = [k for k in self._initial_state if k not in state]
        unexpected = [k for k in state if k not in self._initial_state]
        if missing or unexpected:
            raise KeyError(
                f"Error(s) in loading state of {self.name!r}: "
                f"missing {missing}, unexpected {unexpected}."
            )
        self._state = OrderedDict((k, deepcopy(state[k])) for k in self._initial_state)

    def reset(self) -> None:
        self._state = OrderedDict(self.initial_state())

    def port(self, name: str) -> ChannelDecl:
        for p in self.in_ports + self.out_ports:
            if p.name == name:
                return p
        raise KeyError(f"Component {self.name!r} has no port {name!r}.")

    @property
    def in_port_names(self) -> Tuple[str, ...]:
        return tuple(p.name for p in self.in_ports)

    @property
    def out_port_names(self) -> Tuple[str, ...]:
        return tuple(p.name for p in self.out_ports)

    def feedthrough(self, out_port: str) -> FrozenSet[str]:
        """Input ports whose current-tick interval `out_port` may depend on."""
        if self.causality == STRICT:
            return frozenset()
        return frozenset(self.in_port_names)

    def mode(self, state: Mapping[str, Any]) -> Optional[ProcessMode]:
        """Mode of a process-derived component in `state`; None otherwise."""
        return None

    def assumption_scope(self, inputs: Mapping[str, TimeInterval]) -> Scope:
        fallback = {p.name: p.msg_type.default() for p in self.in_ports}
        return Scope({}, inputs, fallback)

    def violated_assumptions(
        self, inputs: Mapping[str, TimeInterval]
    ) -> List[Assumption]:
        """Assumptions that the given input intervals of one tick violate."""
        scope = self.assumption_scope(inputs)
        return [a for a in self.assumptions if not a.holds(inputs, scope)]

    def transition(
        self, state: Mapping[str, Any], t: int, inputs: Mapping[str, TimeInterval]
    ) -> StepResult:
        r"""Compute one tick.

        Should be overridden by all subclasses. Must not mutate `state`.
        Inputs missing from `inputs` read as the empty interval, which lets the
        scheduler ask for outputs before every input of the tick is known.
        """
        raise NotImplementedError(
            f"Component [{type(self).__name__}] is missing the required "
            '"transition" function.'
        )

    def step(self, t: int, inputs: Mapping[str, TimeInterval]) -> StepResult:
        """
        Advance the component by one tick, updating its own state.

        Raises:
            KeyError: If `inputs` misses an in port or names an unknown one.
        """
        check_inputs(self, inputs)
        result = self.transition(self.state, t, inputs)
        self._state = OrderedDict(result.next_state)
        return result

    def _get_name(self):
        return self.__class__.__name__

    def extra_repr(self) -> str:
        ins = ", ".join(f"{p.name}: {p.msg_type}" for p in self.in_ports)
        outs = ", ".join(f"{p.name}: {p.msg_type}" for p in self.out_ports)
        return f"name={self.name!r}, in=({ins}), out=({outs}), {self.causality}"

    def __repr__(self):
        return f"{self._get_name()}({self.extra_repr()})"


def check_inputs(component: Component, inputs: Mapping[str, TimeInterval]) -> None:
    expected = set(component.in_port_names)
    missing = sorted(expected - set(inputs))
    unexpected = sorted(set(inputs) - expected)
    if missing or unexpected:
        raise KeyError(
            f"Inputs of {component.name!r}: missing {missing}, unexpected {unexpected}."
        )
    for name, interval in inputs.items():
        if not isinstance(interval, TimeInterval):
            raise TypeError(
                f"Input {name!r} expects a TimeInterval, "
                f"but got {type(interval).__name__}."
            )
        for m in interval:
            component.port(name).msg_type.check(m, where=f"{component.name}.{name}")


def step(
    c: Component, t: int, inputs: Mapping[str, TimeInterval]
) -> Tuple[Dict[str, TimeInterval], Dict[str, Any]]:
    """
    Run one tick of `c` from its current state without modifying it.

    Returns:
        Tuple[Dict[str, TimeInterval], Dict[str, Any]]: The output intervals and
        the next state.
    """
    check_inputs(c, inputs)
    result = c.transition(c.state, t, inputs)
    return result.outputs, result.next_state


def silent_outputs(component: Component) -> Dict[str, TimeInterval]:
    return {name: EMPTY for name in component.out_port_names}
