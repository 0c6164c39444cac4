"""
Parser of specification documents (``.pspec`` files).

A document is a sequence of declarations::

    // a process running for `d` active ticks
    process Fixed(d: Int = 3) {
      in a: Int;
      out y: Int;
      buf: a = 0;
      init: k: Int = 0;
      initProcess: k := 1;
      asm: msg(1, a);
      wcet: d;
      ending: k >= d;
      calc: k := k + 1;
      calcF: y := [k];
    }

    compose M = (Fixed(d=3) ; Fixed(d=5)) || loop(manual gap=2) Other
        with Fixed_00.y -> Other.a

    env E { entry @ 0 = [ev]; Fixed_00.a @ 2 = [5]; }

In process expressions ``loop(...)`` binds tightest, then ``;``, then ``||``
and ``(+)`` at the same level; all binary operators are left-associative.
Alternatives take an optional chooser, e.g. ``(+)[left]``, ``(+)[random 7]``.
"""

import logging
from dataclasses import dataclass, replace
from typing import List, NamedTuple, Optional, Tuple, Type

import pyparsing as pp

from procview.composition.expr import (
    Alt,
    Elem,
    LoopAuto,
    LoopNonAuto,
    Par,
    ProcessExpr,
    Seq,
)
from procview.composition.policy import LEFT, RIGHT, ChooserPolicy, RestartPolicy
from procview.dsl.document import (
    COMPOSE,
    ENV,
    PROCESS,
    CompositionDecl,
    EnvDecl,
    EnvEvent,
    Span,
    SpecDocument,
)
from procview.errors import (
    CausalityCycleError,
    InvalidSpecError,
    NameCollisionError,
    NoEntryPointError,
    SpecSyntaxError,
    SpecTypeError,
    UnknownStreamError,
    UnresolvedReferenceError,
    WireTypeMismatchError,
)
from procview.process.assumption import IntervalPredicate, MsgBound
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
from procview.process.spec import (
    INPUT,
    OUTPUT,
    Assignment,
    BehaviorSpec,
    BufferDecl,
    ChannelDecl,
    Diagnostic,
    ElementaryProcessSpec,
    LocalDecl,
    ParamDecl,
    validate,
)
from procview.simulation.scheduler import schedule
from procview.streams.message import BOOL, EV, EVENT, INT, Message, enum_type

logger = logging.getLogger(__name__)

# Necessary for reasonable speed when using infix_notation
pp.ParserElement.enable_packrat()

RESERVED = (
    "and asm buf calc calcF compose count else env ending ev false ft if in init "
    "initProcess loop msg not or out present process then true wcet with"
).split()

# Diagnostic codes of validate() and the exceptions parse() raises for them
TYPE_CODES = ("TypeMismatch", "BufferTypeMismatch")
REFERENCE_CODES = ("UnresolvedSymbol",)


@dataclass(frozen=True)
class _Call:
    """Unresolved reference to a process or composition inside ``compose``."""

    name: str
    args: Tuple[Tuple[str, Message], ...]
    span: Span


class _Decl(NamedTuple):
    namespace: str
    name: str
    value: object
    span: Span


def _span(s: str, loc: int) -> Span:
    return Span(pp.lineno(loc, s), pp.col(loc, s))


def _kw(word: str) -> pp.ParserElement:
    return pp.Suppress(pp.Keyword(word))


def _clause(word: str) -> pp.ParserElement:
    """``word:`` opening a section of a process block."""
    keyword = pp.Keyword(word).set_name(f"'{word}:' clause")
    return pp.Suppress(keyword) + pp.Suppress(":")


def _fold_binary(tokens):
    items = tokens[0]
    result = items[0]
    for i in range(1, len(items), 2):
        result = Binary(items[i], result, items[i + 1])
    return result


def _fold_unary(tokens):
    op, operand = tokens[0]
    return Unary(op, operand)


def _fold_process(tokens):
    items = tokens[0]
    result = items[0]
    for i in range(1, len(items), 2):
        op, right = items[i], items[i + 1]
        if op == ";":
            result = Seq(result, right)
        elif op == "||":
            result = Par(result, right)
        else:
            result = Alt(result, right, op)
    return result


def _apply_loop(tokens):
    policy, body = tokens[0]
    if isinstance(policy, RestartPolicy):
        return LoopNonAuto(body, policy)
    return LoopAuto(body, policy)


def _check_delay(s, loc, tokens):
    if tokens[0] < 1:
        raise pp.ParseFatalException(s, loc, "a loop delay needs at least one tick")


def _manual_policy(s, loc, tokens):
    restart = tokens.get("restart", False)
    gap = tokens.get("gap", 1)
    if gap < 1:
        raise pp.ParseFatalException(s, loc, "the restart gap must be at least 1")
    return RestartPolicy(allow_restart_while_running=restart, min_gap_ticks=gap)


def _build_process(s, loc, tokens):
    calc_f = tokens.get("calcF")
    behavior = BehaviorSpec(
        pr_ending=tokens["ending"][0],
        pr_calc=tuple(tokens["calc"]),
        pr_calc_f=None if calc_f is None else tuple(calc_f),
        init_process=tuple(tokens.get("initProcess", ())),
        assumption=tuple(tokens.get("asm", ())),
        locals=tuple(tokens.get("init", ())),
    )
    wcet = tokens.get("wcet")
    spec = ElementaryProcessSpec(
        name=tokens["name"],
        behavior=behavior,
        channels=tuple(tokens["channels"]),
        buffers=tuple(tokens.get("buf", ())),
        params=tuple(tokens["params"]),
        declared_wcet=None if wcet is None else wcet[0],
    )
    return _Decl(PROCESS, spec.name, spec, _span(s, loc))


def _build_grammar() -> pp.ParserElement:
    LP, RP, SEMI, COMMA = map(pp.Suppress, "();,")
    word = pp.Word(pp.alphas + "_", pp.alphanums + "_")
    reserved = pp.MatchFirst(pp.Keyword(k) for k in RESERVED)
    ident = pp.Combine(~reserved + word).set_name("name")
    number = pp.Regex(r"\d+").set_parse_action(lambda t: int(t[0])).set_name("tick")
    port = pp.Regex(r"[A-Za-z_]\w*\.[A-Za-z_]\w*").set_name("instance.port")

    # literals
    int_lit = pp.Regex(r"-?\d+").set_parse_action(lambda t: Message.of_int(int(t[0])))
    bool_lit = (pp.Keyword("true") | pp.Keyword("false")).set_parse_action(
        lambda t: Message.of_bool(t[0] == "true")
    )
    ev_lit = pp.Keyword("ev").set_parse_action(lambda: EV)
    sym_lit = pp.Regex(r"#[A-Za-z_]\w*").set_parse_action(
        lambda t: Message.of_symbol(t[0][1:])
    )
    literal = (int_lit | bool_lit | ev_lit | sym_lit).set_name("literal")

    # types
    enum_t = (pp.Suppress("{") + pp.DelimitedList(ident) + pp.Suppress("}"))
    enum_t.set_parse_action(lambda t: enum_type(*t))
    type_ = (
        pp.Keyword("Int").set_parse_action(lambda: INT)
        | pp.Keyword("Bool").set_parse_action(lambda: BOOL)
        | pp.Keyword("Event").set_parse_action(lambda: EVENT)
        | enum_t
    ).set_name("type")

    # behavior expressions
    expr = pp.Forward().set_name("expression")

    def channel_fn(name: str, node) -> pp.ParserElement:
        return (_kw(name) + LP + ident + RP).set_parse_action(lambda t: node(t[0]))

    interval = pp.Suppress("[") + pp.Opt(expr) + pp.Suppress("]")
    interval.set_parse_action(lambda t: IntervalLit(t[0] if len(t) else None))
    cond = _kw("if") + expr + _kw("then") + expr + _kw("else") + expr
    cond.set_parse_action(lambda t: Cond(t[0], t[1], t[2]))
    atom = (
        cond
        | interval
        | channel_fn("ft", Ft)
        | channel_fn("present", Present)
        | channel_fn("count", Count)
        | literal.copy().add_parse_action(lambda t: Const(t[0]))
        | ident.copy().set_parse_action(lambda t: Ref(t[0]))
    )
    expr <<= pp.infix_notation(
        atom,
        [
            # a minus glued to digits is a negative literal
            (pp.Regex(r"-(?!\s*\d)"), 1, pp.OpAssoc.RIGHT, _fold_unary),
            (pp.Keyword("not"), 1, pp.OpAssoc.RIGHT, _fold_unary),
            (pp.one_of("* / %"), 2, pp.OpAssoc.LEFT, _fold_binary),
            (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _fold_binary),
            (pp.one_of("<= >= == != < >"), 2, pp.OpAssoc.LEFT, _fold_binary),
            (pp.Keyword("and"), 2, pp.OpAssoc.LEFT, _fold_binary),
            (pp.Keyword("or"), 2, pp.OpAssoc.LEFT, _fold_binary),
        ],
    )

    # process blocks
    param = ident + pp.Suppress(":") + type_ + pp.Suppress("=") + literal
    param.set_parse_action(lambda t: ParamDecl(t[0], t[1], t[2]))
    params = pp.Opt(LP + pp.Opt(pp.DelimitedList(param)) + RP)
    direction = pp.Keyword("in").set_parse_action(lambda: INPUT) | pp.Keyword(
        "out"
    ).set_parse_action(lambda: OUTPUT)
    channel = direction + ident + pp.Suppress(":") + type_ + SEMI
    channel.set_parse_action(lambda t: ChannelDecl(t[1], t[2], t[0]))
    buffer = ident + pp.Suppress("=") + literal
    buffer.set_parse_action(lambda t: BufferDecl(t[0], t[1]))
    local = ident + pp.Suppress(":") + type_ + pp.Suppress("=") + literal
    local.set_parse_action(lambda t: LocalDecl(t[0], t[1], t[2]))
    assign = ident + pp.Suppress(":=") + expr
    assign.set_parse_action(lambda t: Assignment(t[0], t[1]))
    msg_bound = _kw("msg") + LP + number + COMMA + ident + RP
    msg_bound.set_parse_action(lambda t: MsgBound(t[0], t[1]))
    assumption = msg_bound | expr.copy().add_parse_action(
        lambda t: IntervalPredicate(t[0])
    )

    def items(element: pp.ParserElement) -> pp.ParserElement:
        return pp.Group(pp.ZeroOrMore(element + SEMI))

    process = (
        _kw("process")
        - ident("name")
        + pp.Group(params)("params")
        + pp.Suppress("{")
        + pp.Group(pp.ZeroOrMore(channel))("channels")
        + pp.Opt(_clause("buf") + items(buffer)("buf"))
        + pp.Opt(_clause("init") + items(local)("init"))
        + pp.Opt(_clause("initProcess") + items(assign)("initProcess"))
        + pp.Opt(_clause("asm") + items(assumption)("asm"))
        + pp.Opt(_clause("wcet") + pp.Group(expr + SEMI)("wcet"))
        + _clause("ending")
        + pp.Group(expr + SEMI)("ending")
        + _clause("calc")
        + items(assign)("calc")
        + pp.Opt(_clause("calcF") + items(assign)("calcF"))
        + pp.Suppress("}")
    ).set_parse_action(_build_process)

    # process expressions
    arg = pp.Group(ident + pp.Suppress("=") + literal)
    call = ident + pp.Group(pp.Opt(LP + pp.DelimitedList(arg) + RP))
    call.set_parse_action(
        lambda s, loc, t: _Call(t[0], tuple((k, v) for k, v in t[1]), _span(s, loc))
    )
    auto = _kw("auto") + number.copy().add_parse_action(_check_delay)
    flag = pp.Keyword("true").set_parse_action(lambda: True) | pp.Keyword(
        "false"
    ).set_parse_action(lambda: False)
    manual = (
        _kw("manual")
        + pp.Opt(_kw("restart") + pp.Suppress("=") + flag("restart"))
        + pp.Opt(_kw("gap") + pp.Suppress("=") + number("gap"))
    ).set_parse_action(_manual_policy)
    loop_op = _kw("loop") + LP + (auto | manual) + RP
    chooser = (
        pp.Keyword("rr").set_parse_action(lambda: ChooserPolicy.round_robin())
        | pp.Keyword(LEFT).set_parse_action(lambda: ChooserPolicy.fixed(LEFT))
        | pp.Keyword(RIGHT).set_parse_action(lambda: ChooserPolicy.fixed(RIGHT))
        | (_kw("random") + number).set_parse_action(
            lambda t: ChooserPolicy.seeded_random(t[0])
        )
    ).set_name("chooser")
    alt_op = pp.Suppress("(+)") + pp.Opt(pp.Suppress("[") + chooser + pp.Suppress("]"))
    alt_op.set_parse_action(lambda t: t[0] if len(t) else ChooserPolicy.round_robin())
    pexpr = pp.infix_notation(
        call,
        [
            (loop_op, 1, pp.OpAssoc.RIGHT, _apply_loop),
            (pp.Literal(";"), 2, pp.OpAssoc.LEFT, _fold_process),
            (pp.Literal("||") | alt_op, 2, pp.OpAssoc.LEFT, _fold_process),
        ],
    ).set_name("process expression")
    link = pp.Group(port + pp.Suppress("->") + port)
    compose = (
        _kw("compose")
        - ident("name")
        + pp.Suppress("=")
        + pexpr("expr")
        + pp.Opt(_kw("with") + pp.Group(pp.DelimitedList(link))("links"))
    ).set_parse_action(
        lambda s, loc, t: _Decl(
            COMPOSE,
            t["name"],
            (t["expr"], tuple((a, b) for a, b in t.get("links", ()))),
            _span(s, loc),
        )
    )

    # environments
    env_channel = port | word
    env_value = pp.Group(
        pp.Suppress("[") + pp.Opt(pp.DelimitedList(literal)) + pp.Suppress("]")
    )
    env_item = env_channel + pp.Suppress("@") + number + pp.Suppress("=") + env_value
    env_item.set_parse_action(lambda t: EnvEvent(t[0], t[1], tuple(t[2])))
    env = (
        _kw("env")
        - ident("name")
        + pp.Suppress("{")
        + pp.Group(pp.ZeroOrMore(env_item + SEMI))("events")
        + pp.Suppress("}")
    ).set_parse_action(
        lambda s, loc, t: _Decl(
            ENV, t["name"], EnvDecl(t["name"], tuple(t["events"])), _span(s, loc)
        )
    )

    document = pp.ZeroOrMore(process | compose | env) + pp.StringEnd()
    document.ignore(pp.dbl_slash_comment)
    return document


_GRAMMAR = _build_grammar()


def _parse_declarations(text: str) -> List[_Decl]:
    try:
        return list(_GRAMMAR.parse_string(text, parse_all=True))
    except pp.ParseBaseException as e:
        element = getattr(e, "parser_element", None)
        expected = [str(element)] if element is not None else []
        raise SpecSyntaxError(e.msg, e.lineno, e.col, expected) from None


class _Problem(NamedTuple):
    error: Type[Exception]
    diagnostic: Diagnostic


class _Resolver:
    """Turns parsed declarations into a document, collecting every problem."""

    def __init__(self):
        self.document = SpecDocument()
        self.problems: List[_Problem] = []

    def report(self, error: Type[Exception], code: str, message: str, where: Span):
        self.problems.append(_Problem(error, Diagnostic(code, message, str(where))))

    def add(self, decl: _Decl) -> None:
        table = {
            PROCESS: self.document.processes,
            COMPOSE: self.document.compositions,
            ENV: self.document.envs,
        }[decl.namespace]
        if decl.name in table:
            first = self.document.span_of(decl.namespace, decl.name)
            self.report(
                NameCollisionError,
                "DuplicateDeclaration",
                f"{decl.namespace} {decl.name!r} is already declared at {first}.",
                decl.span,
            )
            return
        self.document.spans[(decl.namespace, decl.name)] = decl.span
        if decl.namespace == PROCESS:
            self._check_process(decl.value, decl.span)
            table[decl.name] = decl.value
        elif decl.namespace == ENV:
            table[decl.name] = decl.value
        else:
            raw, links = decl.value
            expr = self.resolve(raw)
            if expr is not None:
                table[decl.name] = CompositionDecl(decl.name, expr, links)

    def _check_process(self, spec: ElementaryProcessSpec, where: Span) -> None:
        for d in validate(spec):
            if d.code in TYPE_CODES:
                error = SpecTypeError
            elif d.code in REFERENCE_CODES:
                error = UnresolvedReferenceError
            else:
                error = InvalidSpecError
            location = f"{where} process {spec.name}"
            if d.location:
                location += f", {d.location}"
            diagnostic = Diagnostic(d.code, d.message, location)
            self.problems.append(_Problem(error, diagnostic))

    def resolve(self, node) -> Optional[ProcessExpr]:
        if isinstance(node, _Call):
            return self._resolve_call(node)
        if isinstance(node, (Seq, Par, Alt)):
            left, right = self.resolve(node.left), self.resolve(node.right)
            if left is None or right is None:
                return None
            return replace(node, left=left, right=right)
        body = self.resolve(node.body)
        return None if body is None else replace(node, body=body)

    def _resolve_call(self, call: _Call) -> Optional[ProcessExpr]:
        doc = self.document
        if call.name in doc.processes:
            spec = doc.processes[call.name]
            try:
                spec.bind(**dict(call.args))
            except KeyError as e:
                self.report(
                    UnresolvedReferenceError,
                    "UnresolvedReference",
                    e.args[0],
                    call.span,
                )
                return None
            except SpecTypeError as e:
                self.report(SpecTypeError, "TypeMismatch", str(e), call.span)
                return None
            return Elem(spec, call.args)
        if call.name in doc.compositions and not call.args:
            return doc.compositions[call.name].expr
        self.report(
            UnresolvedReferenceError,
            "UnresolvedReference",
            f"Unknown process or composition {call.name!r}.",
            call.span,
        )
        return None


def _resolve(text: str) -> _Resolver:
    declarations = _parse_declarations(text)
    resolver = _Resolver()
    # processes first so that compositions may refer to later ones
    for decl in sorted(declarations, key=lambda d: d.namespace != PROCESS):
        resolver.add(decl)
    return resolver


def _raise(problem: _Problem) -> None:
    d = problem.diagnostic
    if problem.error is InvalidSpecError:
        raise InvalidSpecError(d.location, [d])
    raise problem.error(f"{d.location}: {d.message}")


def parse(text: str) -> SpecDocument:
    """
    Parse a specification document.

    Processes may be referred to before their declaration; a composition may
    refer to compositions declared before it, which are inlined.

    Args:
        text (str): The document.

    Returns:
        SpecDocument: The declarations, with composition references resolved.

    Raises:
        SpecSyntaxError: If `text` does not follow the grammar; carries the
            line, the column and the expected tokens.
        NameCollisionError: If a name is declared twice in one namespace.
        UnresolvedReferenceError: If a composition or behavior refers to an
            undeclared name.
        SpecTypeError: If declared channel, buffer or parameter types
            disagree.
        InvalidSpecError: If a process violates another well-formedness rule.

    Example::

        >>> doc = parse("process P { ending: true; calc: }")
        >>> list(doc.processes)
        ['P']
    """
    resolver = _resolve(text)
    if resolver.problems:
        _raise(resolver.problems[0])
    logger.debug(f"Parsed document: {resolver.document.declarations()}")
    return resolver.document


def check(text: str) -> List[Diagnostic]:
    """
    Report every problem of a document without raising.

    Beyond :func:`parse`, every composition is compiled and scheduled, so
    wiring errors and same-tick cycles are reported as well.

    Returns:
        List[Diagnostic]: Empty iff the document is usable.
    """
    try:
        resolver = _resolve(text)
    except SpecSyntaxError as e:
        return [Diagnostic("SyntaxError", str(e), f"{e.line}:{e.column}")]
    diagnostics = [p.diagnostic for p in resolver.problems]
    if diagnostics:
        return diagnostics

    doc = resolver.document
    for name, decl in doc.compositions.items():
        where = str(doc.span_of(COMPOSE, name))
        try:
            schedule(decl.compile())
        except (
            NoEntryPointError,
            NameCollisionError,
            WireTypeMismatchError,
            UnknownStreamError,
            CausalityCycleError,
        ) as e:
            message = e.args[0] if isinstance(e, KeyError) else str(e)
            diagnostics.append(Diagnostic(type(e).__name__, message, where))
    return diagnostics


def parse_file(path: str) -> SpecDocument:
    """Read and parse the document at `path`."""
    with open(path, encoding="utf-8") as f:
        return parse(f.read())
