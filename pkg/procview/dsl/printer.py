"""
Printer of specification documents.

The output re-parses to an equal document: ``parse(print_document(doc)) ==
doc``. Compositions that referred to other compositions are printed inlined.
"""

from typing import List

from procview.composition.expr import (
    Alt,
    Elem,
    LoopAuto,
    LoopNonAuto,
    Par,
    ProcessExpr,
    Seq,
)
from procview.composition.policy import ROUND_ROBIN
from procview.dsl.document import CompositionDecl, EnvDecl, SpecDocument
from procview.process.expr import format_expr, format_message
from procview.process.spec import ElementaryProcessSpec

INDENT = "  "

_LOOP, _SEQ, _CHOICE, _LEAF = 3, 2, 1, 4


def _precedence(expr: ProcessExpr) -> int:
    if isinstance(expr, Elem):
        return _LEAF
    if isinstance(expr, (LoopAuto, LoopNonAuto)):
        return _LOOP
    if isinstance(expr, Seq):
        return _SEQ
    return _CHOICE


def _wrap(expr: ProcessExpr, parens: bool) -> str:
    text = print_process_expr(expr)
    return f"({text})" if parens else text


def print_process_expr(expr: ProcessExpr) -> str:
    """
    Render a process expression with the fewest parentheses that keep its
    shape under left-associative parsing.

    Example::

        >>> print_process_expr(Par(Seq(Elem(p), Elem(q)), Elem(r)))
        'P ; Q || R'
        >>> print_process_expr(Seq(Elem(p), Seq(Elem(q), Elem(r))))
        'P ; (Q ; R)'
    """
    if isinstance(expr, Elem):
        return expr.label
    if isinstance(expr, LoopAuto):
        return f"loop(auto {expr.delay_ticks}) " + _wrap(
            expr.body, _precedence(expr.body) < _LOOP
        )
    if isinstance(expr, LoopNonAuto):
        return f"loop(manual {expr.restart_policy}) " + _wrap(
            expr.body, _precedence(expr.body) < _LOOP
        )
    if isinstance(expr, Seq):
        op = ";"
    elif isinstance(expr, Par):
        op = "||"
    elif isinstance(expr, Alt):
        policy = expr.chooser_policy
        op = "(+)" if policy.kind == ROUND_ROBIN else f"(+)[{policy}]"
    else:
        raise TypeError(
            f"`expr` expects a process expression, but got {type(expr).__name__}."
        )
    prec = _precedence(expr)
    left = _wrap(expr.left, _precedence(expr.left) < prec)
    right = _wrap(expr.right, _precedence(expr.right) <= prec)
    return f"{left} {op} {right}"


def _assignments(items) -> str:
    return " ".join(f"{a.target} := {format_expr(a.expr)};" for a in items)


def _section(name: str, body: str) -> str:
    return f"{INDENT}{name}:" + (f" {body}" if body else "")


def print_process(spec: ElementaryProcessSpec) -> str:
    params = ", ".join(
        f"{p.name}: {p.msg_type.name} = {format_message(p.default)}"
        for p in spec.params
    )
    behavior = spec.behavior
    lines = [f"process {spec.name}({params}) {{"]
    for c in spec.channels:
        direction = "in" if c.is_input else "out"
        lines.append(f"{INDENT}{direction} {c.name}: {c.msg_type.name};")
    if spec.buffers:
        buffers = " ".join(
            f"{b.for_input} = {format_message(b.init_value)};" for b in spec.buffers
        )
        lines.append(_section("buf", buffers))
    if behavior.locals:
        locals_ = " ".join(
            f"{v.name}: {v.msg_type.name} = {format_message(v.init_value)};"
            for v in behavior.locals
        )
        lines.append(_section("init", locals_))
    if behavior.init_process:
        lines.append(_section("initProcess", _assignments(behavior.init_process)))
    if behavior.assumption:
        lines.append(
            _section("asm", " ".join(f"{a};" for a in behavior.assumption))
        )
    if spec.declared_wcet is not None:
        lines.append(_section("wcet", f"{format_expr(spec.declared_wcet)};"))
    lines.append(_section("ending", f"{format_expr(behavior.pr_ending)};"))
    lines.append(_section("calc", _assignments(behavior.pr_calc)))
    if behavior.pr_calc_f is not None:
        lines.append(_section("calcF", _assignments(behavior.pr_calc_f)))
    lines.append("}")
    return "\n".join(lines)


def print_composition(decl: CompositionDecl) -> str:
    text = f"compose {decl.name} = {print_process_expr(decl.expr)}"
    if decl.links:
        links = ", ".join(f"{a} -> {b}" for a, b in decl.links)
        text += f"\n{INDENT}with {links}"
    return text


def print_env(decl: EnvDecl) -> str:
    lines = [f"env {decl.name} {{"]
    for e in decl.events:
        messages = ", ".join(format_message(m) for m in e.messages)
        lines.append(f"{INDENT}{e.channel} @ {e.tick} = [{messages}];")
    lines.append("}")
    return "\n".join(lines)


def print_document(doc: SpecDocument) -> str:
    """Render every declaration of `doc`, processes first."""
    blocks: List[str] = [print_process(p) for p in doc.processes.values()]
    blocks += [print_composition(c) for c in doc.compositions.values()]
    blocks += [print_env(e) for e in doc.envs.values()]
    return "\n\n".join(blocks) + "\n"
