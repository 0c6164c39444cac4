from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import pyparsing as pp

from procview.analysis.activity import (
    ANY,
    COMPONENT_ACTIVE,
    EXACT,
    LOWER,
    STREAM_EXISTENTIAL,
    UPPER,
    active,
    active_bounded,
    active_on,
    active_only_on,
    active_set,
    disjoint_outputs_check,
)
from procview.errors import SpecSyntaxError
from procview.simulation.trace import Trace

ON_STREAM = "on_stream"
ONLY_ON_STREAM = "only_on_stream"
DISJOINT = "disjoint"
SET_ANY = "set_any"

SET_VARIANTS = (
    SET_ANY,
    "set_lower",
    "set_upper",
    "set_exact",
    "set_lower_comp",
    "set_upper_comp",
    "set_exact_comp",
)

# Spelling of each variant in the query syntax
KEYWORDS = {
    ON_STREAM: "on",
    ONLY_ON_STREAM: "only",
    ANY: "active",
    LOWER: "lower",
    UPPER: "upper",
    EXACT: "exact",
    DISJOINT: "disjoint",
    **{v: v for v in SET_VARIANTS},
}


@dataclass(frozen=True)
class ActivityQuery:
    """
    One activity predicate to evaluate on a trace.

    Attributes:
        variant (str): One of the component variants (``on_stream``,
            ``only_on_stream``, ``any``, ``lower``, ``upper``, ``exact``),
            the set variants (``set_any``, ``set_lower``, ..., with a
            ``_comp`` suffix for the component-active counting) or
            ``disjoint``.
        subject (Tuple[str, ...]): One component, or the members of a set.
        tick (int | None): Tick to evaluate at; None for every tick.
        stream (str | None): Output stream of the ``on``/``only`` variants.
        rb (int | None): Bound of the bounded variants.
    """

    variant: str
    subject: Tuple[str, ...]
    tick: Optional[int] = None
    stream: Optional[str] = None
    rb: Optional[int] = None

    def __post_init__(self):
        if self.variant not in KEYWORDS:
            raise ValueError(f"Unknown activity variant {self.variant!r}.")
        if not self.subject:
            raise ValueError("`subject` expects at least one component, but got none.")
        if not self.is_set_query and len(self.subject) != 1:
            raise ValueError(
                f"`{KEYWORDS[self.variant]}` expects one component, "
                f"but got {len(self.subject)}."
            )
        if self.variant in (ON_STREAM, ONLY_ON_STREAM) and self.stream is None:
            raise ValueError(f"`{KEYWORDS[self.variant]}` expects an output stream.")
        if self.is_bounded and self.rb is None:
            raise ValueError(f"`{KEYWORDS[self.variant]}` expects a bound.")

    @property
    def is_set_query(self) -> bool:
        return self.variant in SET_VARIANTS

    @property
    def is_bounded(self) -> bool:
        return self.variant in (LOWER, UPPER, EXACT) or (
            self.is_set_query and self.variant != SET_ANY
        )

    @property
    def kind(self) -> str:
        """Comparison of a bounded variant: lower, upper, exact or any."""
        if self.variant == SET_ANY:
            return ANY
        return self.variant.replace("set_", "").replace("_comp", "")

    @property
    def counting(self) -> str:
        if self.variant.endswith("_comp"):
            return COMPONENT_ACTIVE
        return STREAM_EXISTENTIAL

    def __str__(self):
        if self.is_set_query:
            subject = "{" + ", ".join(self.subject) + "}"
        else:
            subject = self.subject[0]
        if self.variant == DISJOINT:
            return f"disjoint({subject})"
        args = [subject, "*" if self.tick is None else str(self.tick)]
        if self.stream is not None:
            args.append(self.stream)
        if self.rb is not None:
            args.append(str(self.rb))
        return f"{KEYWORDS[self.variant]}({', '.join(args)})"


@dataclass
class ActivityResult:
    """
    Outcome of an :class:`ActivityQuery`.

    Attributes:
        query (ActivityQuery): The evaluated query.
        values (Dict[int, bool]): Value of the predicate per evaluated tick;
            empty for ``disjoint``.
        holds (bool): True iff the predicate holds at every evaluated tick.
    """

    query: ActivityQuery
    values: Dict[int, bool] = field(default_factory=dict)
    holds: bool = False

    @property
    def ticks_holding(self) -> Tuple[int, ...]:
        return tuple(t for t, v in self.values.items() if v)

    def __str__(self):
        verdict = "holds" if self.holds else "fails"
        if not self.values:
            return f"{self.query}: {verdict}"
        return (
            f"{self.query}: {verdict} "
            f"({len(self.ticks_holding)}/{len(self.values)} ticks)"
        )


def evaluate_query(trace: Trace, query: ActivityQuery) -> ActivityResult:
    """
    Evaluate `query` on `trace`, at its tick or at every tick.

    Raises:
        UnknownStreamError: If a component or stream is not in the trace.
        HorizonExceededError: If the tick lies outside the trace.
    """
    if query.variant == DISJOINT:
        holds = disjoint_outputs_check(trace, query.subject[0])
        return ActivityResult(query, {}, holds)

    def at(t: int) -> bool:
        c = query.subject[0]
        if query.variant == ON_STREAM:
            return active_on(trace, c, t, query.stream)
        if query.variant == ONLY_ON_STREAM:
            return active_only_on(trace, c, t, query.stream)
        if query.variant == ANY:
            return active(trace, c, t)
        if query.variant in (LOWER, UPPER, EXACT):
            return active_bounded(trace, c, t, query.variant, query.rb)
        return active_set(
            trace,
            query.subject,
            t,
            query.kind,
            1 if query.rb is None else query.rb,
            query.counting,
        )

    ticks = range(trace.horizon) if query.tick is None else (query.tick,)
    values = {t: at(t) for t in ticks}
    return ActivityResult(query, values, all(values.values()))


def _query_grammar() -> pp.ParserElement:
    ident = pp.Word(pp.alphas + "_", pp.alphanums + "_")
    number = pp.Word(pp.nums).set_parse_action(lambda tokens: int(tokens[0]))
    tick = number | pp.Literal("*").set_parse_action(lambda: -1)
    lpar, rpar, comma = map(pp.Suppress, "(),")
    members = pp.Group(
        pp.Suppress("{") + pp.DelimitedList(ident) + pp.Suppress("}")
    )

    def keyword(variant: str) -> pp.ParserElement:
        return pp.Keyword(KEYWORDS[variant]).set_parse_action(lambda: variant)

    component = pp.Group(ident)
    stream_q = (keyword(ON_STREAM) | keyword(ONLY_ON_STREAM)) + lpar + component
    stream_q += comma + tick + comma + ident("stream") + rpar
    any_q = keyword(ANY) + lpar + component + comma + tick + rpar
    bounded_q = pp.MatchFirst(keyword(v) for v in (LOWER, UPPER, EXACT))
    bounded_q += lpar + component + comma + tick + comma + number("rb") + rpar
    set_any_q = keyword(SET_ANY) + lpar + members + comma + tick + rpar
    set_kw = pp.MatchFirst(keyword(v) for v in SET_VARIANTS[1:])
    set_q = set_kw + lpar + members + comma + tick + comma + number("rb") + rpar
    disjoint_q = keyword(DISJOINT) + lpar + component + rpar
    return (
        stream_q | any_q | bounded_q | set_any_q | set_q | disjoint_q
    ) + pp.StringEnd()


_GRAMMAR = _query_grammar()


def parse_query(text: str) -> ActivityQuery:
    """
    Parse the textual form of an activity query.

    A tick of ``*`` evaluates the predicate at every tick of the trace.

    Example::

        >>> parse_query("exact(P, *, 1)")
        ActivityQuery(variant='exact', subject=('P',), tick=None, stream=None, rb=1)
        >>> str(parse_query("set_lower_comp({P,Q}, 3, 1)"))
        'set_lower_comp({P, Q}, 3, 1)'

    Raises:
        SpecSyntaxError: If `text` is not a query.
    """
    try:
        tokens = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise SpecSyntaxError(e.msg, e.lineno, e.col) from None
    variant, subject = tokens[0], tuple(tokens[1])
    tick = None
    if len(tokens) > 2:
        tick = None if tokens[2] == -1 else tokens[2]
    return ActivityQuery(
        variant=variant,
        subject=subject,
        tick=tick,
        stream=tokens.get("stream"),
        rb=tokens.get("rb"),
    )
