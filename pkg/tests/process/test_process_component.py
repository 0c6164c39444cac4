from dataclasses import replace

import pytest

from procview.errors import ChannelTypeError, InvalidSpecError
from procview.process import (
    MsgBound,
    ProcessComponent,
    ProcessMode,
    const,
    step,
    to_component,
)
from procview.process.expr import (
    Binary,
    Cond,
    Const,
    Count,
    Ft,
    IntervalLit,
    Present,
    Ref,
    Unary,
)
from procview.process.process_component import (
    RULE_CALC,
    RULE_FINISH,
    RULE_IDLE,
    RULE_START,
)
from procview.streams import EMPTY, EV, Message, TimeInterval
from tests.utils import FIXED, echo_spec, random_process_spec

START = TimeInterval((EV,))


def reference_echo(starts, values):
    """
    Direct tick-by-tick model of the Echo process. Returns the fired rules, the
    buffer after every tick and the (stop, y, n) outputs.
    """
    active, buf, k, runs = False, 0, 0, 0
    rules, buffers, outputs = [], [], []
    for start, value in zip(starts, values):
        if active:
            if k >= 2:
                rules.append(RULE_FINISH)
                outputs.append((True, buf, runs))
                active = False
            else:
                rules.append(RULE_CALC)
                outputs.append(None)
                k += 1
        else:
            if value is not None:
                buf = value
            if start:
                rules.append(RULE_START)
                active, k, runs = True, 1, runs + 1
            else:
                rules.append(RULE_IDLE)
            outputs.append(None)
        buffers.append(buf)
    return rules, buffers, outputs


def reference_eval(expr, values, inputs):
    """
    Evaluate `expr` on plain ints and bools. `values` holds parameters, locals
    and buffers; `inputs` maps a channel to the list of its current messages.
    """
    if isinstance(expr, Const):
        return expr.value.value
    if isinstance(expr, Ref):
        return values[expr.name]
    if isinstance(expr, Ft):
        messages = inputs[expr.channel]
        return messages[0] if messages else values[expr.channel + "Buf"]
    if isinstance(expr, Count):
        return len(inputs[expr.channel])
    if isinstance(expr, Present):
        return bool(inputs[expr.channel])
    if isinstance(expr, IntervalLit):
        if expr.element is None:
            return []
        return [reference_eval(expr.element, values, inputs)]
    if isinstance(expr, Unary):
        operand = reference_eval(expr.operand, values, inputs)
        return -operand if expr.op == "-" else not operand
    if isinstance(expr, Cond):
        branch = expr.then if reference_eval(expr.cond, values, inputs) else expr.orelse
        return reference_eval(branch, values, inputs)
    assert isinstance(expr, Binary)
    a = reference_eval(expr.left, values, inputs)
    b = reference_eval(expr.right, values, inputs)
    return {
        "+": lambda: a + b,
        "-": lambda: a - b,
        "*": lambda: a * b,
        "/": lambda: a // b if b else 0,
        "%": lambda: a % b if b else 0,
        "<": lambda: a < b,
        "<=": lambda: a <= b,
        ">": lambda: a > b,
        ">=": lambda: a >= b,
        "==": lambda: a == b,
        "!=": lambda: a != b,
        "and": lambda: a and b,
        "or": lambda: a or b,
    }[expr.op]()


def reference_fold(spec, starts, feeds):
    """
    Fold the four transition rules over the ticks. Yields the fired rule,
    whether ``stop`` fired, the output values and the state after each tick.
    """
    params = {p.name: p.default.value for p in spec.params}
    state = {b.name: b.init_value.value for b in spec.buffers}
    state.update({v.name: v.init_value.value for v in spec.behavior.locals})
    active = False
    behavior = spec.behavior
    for start, inputs in zip(starts, feeds):
        outputs = {c.name: [] for c in spec.outputs}
        stop = False
        if active:
            values = {**params, **state}
            if reference_eval(behavior.pr_ending, values, inputs):
                rule, block, stop = RULE_FINISH, behavior.final_effect, True
                active = False
            else:
                rule, block = RULE_CALC, behavior.pr_calc
            updates = {a.target: reference_eval(a.expr, values, inputs) for a in block}
            for name in outputs:
                outputs[name] = updates.pop(name, [])
            state.update(updates)
        else:
            for channel, messages in inputs.items():
                if messages:
                    state[channel + "Buf"] = messages[0]
            rule = RULE_IDLE
            if start:
                values = {**params, **state}
                state.update(
                    {
                        a.target: reference_eval(a.expr, values, inputs)
                        for a in behavior.init_process
                    }
                )
                rule, active = RULE_START, True
        yield rule, stop, outputs, dict(state, active=active)


class TestProcessComponent:
    """
    Tests for the four transition rules of elementary process components.
    """

    def test_ports(self, echo_component):
        assert echo_component.in_port_names == ("start", "a")
        assert echo_component.out_port_names == ("stop", "y", "n")
        assert MsgBound(1, "start") in echo_component.assumptions

    def test_fixed_duration(self, fixed_component):
        rules, stops = [], []
        for t in range(6):
            start = START if t == 0 else EMPTY
            result = fixed_component.step(t, {"start": start})
            rules.append(result.rule)
            stops.append(bool(result.outputs["stop"]))
        assert rules == [
            RULE_START,
            RULE_CALC,
            RULE_CALC,
            RULE_FINISH,
            RULE_IDLE,
            RULE_IDLE,
        ]
        assert stops == [False, False, False, True, False, False]

    def test_start_tick_is_silent(self, fixed_component):
        result = fixed_component.step(0, {"start": START})
        assert all(not interval for interval in result.outputs.values())
        assert fixed_component.mode(fixed_component.state) is ProcessMode.ACTIVE

    def test_zero_duration_still_takes_one_tick(self):
        component = ProcessComponent(FIXED.bind(d=0))
        assert component.step(0, {"start": START}).rule == RULE_START
        result = component.step(1, {"start": EMPTY})
        assert result.rule == RULE_FINISH
        assert result.outputs["stop"] == START

    def test_final_effect_defaults_to_calc(self, fixed_component):
        spec = replace(FIXED, behavior=replace(FIXED.behavior, pr_calc_f=None))
        component = ProcessComponent(spec.bind(d=1))
        component.step(0, {"start": START})
        component.step(1, {"start": EMPTY})
        # calc ran on the final tick as well
        assert component.state["k"] == Message.of_int(2)

    def test_buffer_updates_only_while_inactive(self, echo_component):
        echo_component.step(0, {"start": EMPTY, "a": TimeInterval.of(5, 6)})
        assert echo_component.state["aBuf"] == Message.of_int(5)
        echo_component.step(1, {"start": START, "a": TimeInterval.of(9)})
        # the start tick still refreshes the buffer
        assert echo_component.state["aBuf"] == Message.of_int(9)
        echo_component.step(2, {"start": EMPTY, "a": TimeInterval.of(1)})
        assert echo_component.state["aBuf"] == Message.of_int(9)
        result = echo_component.step(3, {"start": EMPTY, "a": EMPTY})
        assert result.rule == RULE_FINISH
        assert result.outputs["y"] == TimeInterval.of(9)

    def test_unassigned_outputs_are_empty(self):
        spec = echo_spec()
        behavior = replace(spec.behavior, pr_calc_f=())
        component = ProcessComponent(replace(spec, behavior=behavior))
        component.step(0, {"start": START, "a": EMPTY})
        component.step(1, {"start": EMPTY, "a": EMPTY})
        result = component.step(2, {"start": EMPTY, "a": EMPTY})
        assert result.outputs == {"stop": START, "y": EMPTY, "n": EMPTY}

    def test_restart_while_active_warns(self, fixed_component):
        fixed_component.step(0, {"start": START})
        result = fixed_component.step(1, {"start": START})
        assert result.rule == RULE_CALC
        assert [w.kind for w in result.warnings] == ["RestartWhileActive"]

    def test_init_process_runs_on_every_restart(self, echo_component):
        outputs = []
        for t in range(12):
            start = START if t in (0, 5) else EMPTY
            result = echo_component.step(t, {"start": start, "a": EMPTY})
            if result.outputs["n"]:
                outputs.append((t, result.outputs["n"]))
        assert outputs == [(2, TimeInterval.of(1)), (7, TimeInterval.of(2))]
        assert echo_component.state["k"] == Message.of_int(2)

    def test_matches_reference_model(self, rng):
        """
        Test that exactly one rule fires per tick, inactive ticks are silent,
        buffers follow the reference fold and every stop comes after a start.
        """
        for _ in range(300):
            component = ProcessComponent(echo_spec())
            starts = [rng.random() < 0.3 for _ in range(30)]
            values = [
                rng.randint(-5, 5) if rng.random() < 0.4 else None for _ in range(30)
            ]
            rules, buffers, expected = reference_echo(starts, values)
            last_start = None
            for t, (start, value) in enumerate(zip(starts, values)):
                was_active = component.mode(component.state).active
                result = component.step(
                    t,
                    {
                        "start": START if start else EMPTY,
                        "a": EMPTY if value is None else TimeInterval.of(value),
                    },
                )
                assert result.rule == rules[t]
                assert component.state["aBuf"] == Message.of_int(buffers[t])
                if not was_active:
                    assert not any(result.outputs.values())
                    if start:
                        last_start = t
                if expected[t] is None:
                    assert not result.outputs["stop"]
                else:
                    _, y, n = expected[t]
                    assert result.outputs["stop"] == START
                    assert result.outputs["y"] == TimeInterval.of(y)
                    assert result.outputs["n"] == TimeInterval.of(n)
                    assert t >= last_start + 1

    def test_generated_processes_match_reference_fold(self, rng):
        """
        Test 1000 generated processes against a direct fold of the transition
        rules: one rule per tick, silent inactive ticks, buffers refreshed from
        the first message while inactive and restart assignments on every start.
        """
        for _ in range(1000):
            spec = random_process_spec(rng)
            component = ProcessComponent(spec)
            starts = [rng.random() < 0.3 for _ in range(16)]
            feeds = [
                {
                    c.name: [rng.randint(-5, 5) for _ in range(rng.randint(1, 2))]
                    if rng.random() < 0.4
                    else []
                    for c in spec.inputs
                }
                for _ in starts
            ]
            expected = reference_fold(spec, starts, feeds)
            for t, (start, feed, (rule, stop, outputs, state)) in enumerate(
                zip(starts, feeds, expected)
            ):
                was_active = component.mode(component.state).active
                inputs = {x: TimeInterval.of(*values) for x, values in feed.items()}
                inputs["start"] = START if start else EMPTY
                result = component.step(t, inputs)
                assert result.rule == rule, (spec, t)
                assert result.outputs["stop"] == (START if stop else EMPTY)
                for name, values in outputs.items():
                    assert result.outputs[name] == TimeInterval.of(*values)
                active = state.pop("active")
                assert component.state == {
                    **{name: Message.of_int(v) for name, v in state.items()},
                    "active": active,
                }
                if not was_active:
                    assert not any(result.outputs.values())
                    for x, values in feed.items():
                        if values:
                            first = Message.of_int(values[0])
                            assert component.state[f"{x}Buf"] == first
                if rule == RULE_START:
                    assert component.state["k"] == Message.of_int(0)

    def test_invalid_spec_raises(self):
        behavior = replace(FIXED.behavior, pr_ending=const(1))
        with pytest.raises(InvalidSpecError, match="TypeMismatch"):
            to_component(replace(FIXED, behavior=behavior))


class TestComponentState:
    """
    Tests for the state handling shared by all components.
    """

    def test_step_without_mutation(self, fixed_component):
        outputs, next_state = step(fixed_component, 0, {"start": START})
        assert outputs["stop"] == EMPTY
        assert next_state["active"] is True
        assert fixed_component.state["active"] is False

    def test_state_dict_round_trip(self, fixed_component):
        fixed_component.step(0, {"start": START})
        saved = fixed_component.state_dict()
        fixed_component.reset()
        assert fixed_component.state == fixed_component.initial_state()
        fixed_component.load_state_dict(saved)
        assert fixed_component.state["active"] is True

    def test_load_state_dict_rejects_unknown_keys(self, fixed_component):
        with pytest.raises(KeyError, match="unexpected"):
            fixed_component.load_state_dict({"active": False, "k": 0, "extra": 1})

    def test_register_state_twice_raises(self, fixed_component):
        with pytest.raises(KeyError, match="already exists"):
            fixed_component.register_state("k", 0)

    def test_inputs_are_checked(self, echo_component):
        with pytest.raises(KeyError, match="missing"):
            echo_component.step(0, {"start": START})
        with pytest.raises(ChannelTypeError):
            echo_component.step(0, {"start": START, "a": TimeInterval.of(True)})

    def test_assumption_violation(self, echo_component):
        violated = echo_component.violated_assumptions(
            {"start": TimeInterval((EV, EV)), "a": EMPTY}
        )
        assert violated == [MsgBound(1, "start")]

    def test_repr(self, fixed_component):
        assert repr(fixed_component).startswith("ProcessComponent(name='Fixed'")
