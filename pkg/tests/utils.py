import random
from typing import Dict, Mapping, Optional, Sequence

from procview.composition.compiler import compile
from procview.composition.expr import Elem, ProcessExpr
from procview.process.expr import (
    Binary,
    Cond,
    Const,
    Count,
    Ft,
    IntervalLit,
    Present,
    Unary,
    const,
    ref,
)
from procview.process.spec import (
    INPUT,
    OUTPUT,
    Assignment,
    BehaviorSpec,
    BufferDecl,
    ChannelDecl,
    ElementaryProcessSpec,
    LocalDecl,
    ParamDecl,
)
from procview.simulation.env import EnvInputs
from procview.simulation.runner import run
from procview.simulation.trace import ComponentPorts, Trace
from procview.streams.interval import EMPTY, TimeInterval
from procview.streams.message import EV, EVENT, INT, Message
from procview.streams.stream import TimedStream


def fixed_spec(name: str = "Fixed", d: int = 3) -> ElementaryProcessSpec:
    """
    Process that stops exactly `d` ticks after its start (one tick for d < 1).
    """
    return ElementaryProcessSpec(
        name=name,
        params=(ParamDecl("d", INT, Message.of_int(d)),),
        behavior=BehaviorSpec(
            locals=(LocalDecl("k", INT, Message.of_int(0)),),
            init_process=(Assignment("k", const(1)),),
            pr_ending=Binary(">=", ref("k"), ref("d")),
            pr_calc=(Assignment("k", Binary("+", ref("k"), const(1))),),
        ),
        declared_wcet=ref("d"),
    )


def fixed(d: int, spec: Optional[ElementaryProcessSpec] = None) -> Elem:
    """Leaf running `spec` (the shared fixed-duration process) for `d` ticks."""
    return Elem(spec or FIXED, (("d", d),))


FIXED = fixed_spec()


def echo_spec(name: str = "Echo") -> ElementaryProcessSpec:
    """
    Process that runs for two ticks and emits on ``y`` the value buffered from
    input ``a``, plus the number of restarts it has seen on ``n``.
    """
    return ElementaryProcessSpec(
        name=name,
        channels=(
            ChannelDecl("a", INT, INPUT),
            ChannelDecl("y", INT, OUTPUT),
            ChannelDecl("n", INT, OUTPUT),
        ),
        buffers=(BufferDecl("a", Message.of_int(0)),),
        behavior=BehaviorSpec(
            locals=(
                LocalDecl("k", INT, Message.of_int(0)),
                LocalDecl("runs", INT, Message.of_int(0)),
            ),
            init_process=(
                Assignment("k", const(1)),
                Assignment("runs", Binary("+", ref("runs"), const(1))),
            ),
            pr_ending=Binary(">=", ref("k"), const(2)),
            pr_calc=(Assignment("k", Binary("+", ref("k"), const(1))),),
            pr_calc_f=(
                Assignment("y", IntervalLit(ref("aBuf"))),
                Assignment("n", IntervalLit(ref("runs"))),
            ),
        ),
        declared_wcet=const(2),
    )


def event_stream(horizon: int, ticks: Sequence[int]) -> TimedStream:
    return TimedStream.from_ticks(EVENT, horizon, {t: [EV] for t in ticks})


def simulate(
    expr: ProcessExpr,
    events: Mapping[str, Mapping[int, list]],
    horizon: int = 30,
    links=(),
) -> Trace:
    """Compile `expr` and run it on sparse ``{channel: {tick: values}}`` events."""
    network = compile(expr, links)
    return run(network, EnvInputs.from_events(network, horizon, events), horizon)


def random_ticks(rng: random.Random, horizon: int, p: float) -> Sequence[int]:
    return [t for t in range(horizon) if rng.random() < p]


def random_trace(
    rng: random.Random,
    horizon: int = 20,
    components: int = 3,
    max_outputs: int = 3,
    p: float = 0.4,
) -> Trace:
    """
    Trace of made-up components ``C0, C1, ...`` with 1 to `max_outputs` Event
    outputs each, every output nonempty with probability `p` at every tick.
    """
    channels: Dict[str, TimedStream] = {}
    ports: Dict[str, ComponentPorts] = {}
    for i in range(components):
        name = f"C{i}"
        outputs = {}
        for j in range(rng.randint(1, max_outputs)):
            channel = f"{name}.o{j}"
            channels[channel] = TimedStream(
                EVENT,
                tuple(
                    TimeInterval((EV,)) if rng.random() < p else EMPTY
                    for _ in range(horizon)
                ),
            )
            outputs[f"o{j}"] = channel
        ports[name] = ComponentPorts("process", {}, outputs)
    return Trace(horizon=horizon, channels=channels, components=ports)


INT_OPS = ("+", "-", "*", "/", "%")
CMP_OPS = ("<", "<=", ">", ">=", "==", "!=")


def random_int_expr(rng: random.Random, depth: int, names, inputs):
    """Int expression at most `depth` + 1 levels deep over `names` and `inputs`."""
    if depth == 0 or rng.random() < 0.3:
        roll = rng.random()
        if inputs and roll < 0.2:
            return Ft(rng.choice(inputs))
        if inputs and roll < 0.3:
            return Count(rng.choice(inputs))
        if roll < 0.55:
            return const(rng.randint(-3, 3))
        return ref(rng.choice(names))
    roll = rng.random()
    if roll < 0.1:
        return Unary("-", random_int_expr(rng, depth - 1, names, inputs))
    if roll < 0.2:
        return Cond(
            random_bool_expr(rng, depth - 1, names, inputs),
            random_int_expr(rng, depth - 1, names, inputs),
            random_int_expr(rng, depth - 1, names, inputs),
        )
    return Binary(
        rng.choice(INT_OPS),
        random_int_expr(rng, depth - 1, names, inputs),
        random_int_expr(rng, depth - 1, names, inputs),
    )


def random_bool_expr(rng: random.Random, depth: int, names, inputs):
    """Bool expression at most `depth` + 1 levels deep over `names` and `inputs`."""
    if depth == 0:
        if inputs and rng.random() < 0.5:
            return Present(rng.choice(inputs))
        return Const(Message.of_bool(rng.random() < 0.5))
    roll = rng.random()
    if roll < 0.1:
        return Unary("not", random_bool_expr(rng, depth - 1, names, inputs))
    if roll < 0.3:
        return Binary(
            rng.choice(["and", "or"]),
            random_bool_expr(rng, depth - 1, names, inputs),
            random_bool_expr(rng, depth - 1, names, inputs),
        )
    return Binary(
        rng.choice(CMP_OPS),
        random_int_expr(rng, depth - 1, names, inputs),
        random_int_expr(rng, depth - 1, names, inputs),
    )


def random_process_spec(rng: random.Random) -> ElementaryProcessSpec:
    """
    Well-typed elementary process with up to three Int inputs ``x0..x2``, up to
    two Int outputs ``y0, y1``, a parameter ``d`` and locals ``k`` and ``v``.
    Scalar expressions are at most three levels deep. ``k`` counts calc ticks,
    so an activation ends at the latest on its ``d + 1``-th active tick.
    """
    inputs = [f"x{i}" for i in range(rng.randint(0, 3))]
    outputs = [f"y{j}" for j in range(rng.randint(0, 2))]
    names = ["d", "k", "v"] + [f"{x}Buf" for x in inputs]

    def int_expr():
        return random_int_expr(rng, 2, names, inputs)

    def kept():
        # values carried across ticks stay small
        return Binary("%", random_int_expr(rng, 1, names, inputs), const(97))

    def block(*base):
        assignments = list(base)
        for y in outputs:
            roll = rng.random()
            if roll < 0.4:
                assignments.append(Assignment(y, IntervalLit(int_expr())))
            elif roll < 0.6:
                assignments.append(Assignment(y, IntervalLit()))
        return tuple(assignments)

    calc = [
        Assignment("k", Binary("+", ref("k"), const(1))),
        Assignment("v", kept()),
    ]
    if inputs and rng.random() < 0.3:
        calc.append(Assignment(f"{rng.choice(inputs)}Buf", kept()))
    calc_f = None if rng.random() < 0.3 else block(Assignment("v", kept()))
    return ElementaryProcessSpec(
        name="Gen",
        channels=tuple(ChannelDecl(x, INT, INPUT) for x in inputs)
        + tuple(ChannelDecl(y, INT, OUTPUT) for y in outputs),
        buffers=tuple(
            BufferDecl(x, Message.of_int(rng.randint(-3, 3))) for x in inputs
        ),
        params=(ParamDecl("d", INT, Message.of_int(rng.randint(0, 4))),),
        behavior=BehaviorSpec(
            locals=(
                LocalDecl("k", INT, Message.of_int(0)),
                LocalDecl("v", INT, Message.of_int(rng.randint(-3, 3))),
            ),
            init_process=(Assignment("k", const(0)), Assignment("v", kept())),
            pr_ending=Binary(
                "or",
                Binary(">=", ref("k"), ref("d")),
                random_bool_expr(rng, 1, names, inputs),
            ),
            pr_calc=block(*calc),
            pr_calc_f=calc_f,
        ),
    )
