import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from procview.analysis.measure import connector_costs as measure_connector_costs
from procview.composition.connectors import (
    AmpConnector,
    AtConnector,
    GatedDelay,
    PlusConnector,
)
from procview.composition.expr import (
    Alt,
    Elem,
    LoopAuto,
    LoopNonAuto,
    Par,
    ProcessExpr,
    Seq,
    leaves,
)
from procview.composition.policy import FIXED, LEFT
from procview.errors import MissingBoundError

logger = logging.getLogger(__name__)

ZERO = "zero"
MEASURED = "measured"
CONNECTOR_COST_MODES = (ZERO, MEASURED)

# Connectors whose cost enters the calculus
AMP = AmpConnector.label
AT = AtConnector.label
PLUS = PlusConnector.label
DELAY = GatedDelay.label
CONNECTORS = (AMP, AT, PLUS, DELAY)

RULE_LEAF = "leaf"
RULE_SEQ = "wcet(P;Q) = wcet(P) + wcet(Q)"
RULE_PAR = "wcet(P||Q) = max{wcet(P), wcet(Q)} + wcet(&)"
RULE_ALT = "wcet(P(+)Q) = max{wcet(P), wcet(Q)} + wcet(@) + wcet(+)"
RULE_LOOP = "wcet(loop P) = wcet(P)"
RULE_LOOP_DELAY = "wcet(loop P) = wcet(P) + wcet(Delay)"


@dataclass
class WcetNode:
    """
    One step of a WCET derivation.

    Attributes:
        label (str): The subexpression, e.g. ``P(d=3)`` or ``;``.
        rule (str): The equation applied at this node.
        bound (int): Bound of the subexpression in ticks.
        children (List[WcetNode]): Derivations of the operands.
        note (str): Remarks, e.g. the slack of an alternative under a fixed
            chooser.
    """

    label: str
    rule: str
    bound: int
    children: List["WcetNode"] = field(default_factory=list)
    note: str = ""

    def walk(self) -> Iterator["WcetNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def lines(self, indent: int = 0) -> List[str]:
        """Indented text rendering, one line per node."""
        note = f"  # {self.note}" if self.note else ""
        head = f"{'  ' * indent}{self.label} = {self.bound}  [{self.rule}]{note}"
        return [head] + [line for c in self.children for line in c.lines(indent + 1)]


@dataclass
class WcetReport:
    """
    Result of :func:`wcet`.

    Attributes:
        expr (ProcessExpr): The analysed composition.
        bound (int): Worst-case latency from entry to exit, in ticks.
        derivation (WcetNode): Derivation tree mirroring `expr`.
        connector_cost_mode (str): ``"zero"`` or ``"measured"``.
        connector_costs (Dict[str, int]): Cost used for each connector.
    """

    expr: ProcessExpr
    bound: int
    derivation: WcetNode
    connector_cost_mode: str = ZERO
    connector_costs: Dict[str, int] = field(default_factory=dict)

    @property
    def notes(self) -> Tuple[str, ...]:
        return tuple(f"{n.label}: {n.note}" for n in self.derivation.walk() if n.note)

    def __str__(self):
        costs = ", ".join(f"{k}={v}" for k, v in self.connector_costs.items())
        header = f"wcet = {self.bound} ticks (connector cost {self.connector_cost_mode}"
        header += f": {costs})" if costs else ")"
        return "\n".join([header] + self.derivation.lines())


def zero_costs() -> Dict[str, int]:
    return {c: 0 for c in CONNECTORS}


def leaf_bound(elem: Elem, elementary_bounds: Mapping[str, int]) -> int:
    """
    Bound of one leaf, looked up by its label (``P(d=3)``) and then by the
    process name.

    Raises:
        MissingBoundError: If neither key is present.
    """
    for key in (elem.label, elem.spec.name):
        if key in elementary_bounds:
            return elementary_bounds[key]
    raise MissingBoundError(f"No WCET bound for elementary process {elem.label!r}.")


def declared_bounds(expr: ProcessExpr) -> Dict[str, int]:
    """
    Evaluate the declared WCET of every leaf of `expr`, keyed by label.

    Raises:
        MissingBoundError: If a leaf declares no WCET.
    """
    bounds = {}
    for _, elem in leaves(expr):
        value = elem.resolved.wcet_bound()
        if value is None:
            raise MissingBoundError(
                f"Elementary process {elem.label!r} declares no WCET."
            )
        bounds[elem.label] = value
    return bounds


def _alt_note(expr: Alt, left: int, right: int) -> str:
    """Slack of an alternative whose chooser always picks the same branch."""
    policy = expr.chooser_policy
    if policy.kind != FIXED or left == right:
        return ""
    chosen = left if policy.first == LEFT else right
    slack = max(left, right) - chosen
    if not slack:
        return ""
    return f"fixed chooser takes the {policy.first} branch ({chosen}), slack {slack}"


def _derive(
    expr: ProcessExpr,
    bounds: Mapping[str, int],
    costs: Mapping[str, int],
    mode: str,
) -> WcetNode:
    if isinstance(expr, Elem):
        declared = leaf_bound(expr, bounds)
        if declared < 1:
            # an activation takes at least one tick
            return WcetNode(
                expr.label,
                RULE_LEAF,
                1,
                note=f"declared bound {declared} raised to 1",
            )
        return WcetNode(expr.label, RULE_LEAF, declared)

    if isinstance(expr, Seq):
        left = _derive(expr.left, bounds, costs, mode)
        right = _derive(expr.right, bounds, costs, mode)
        return WcetNode(";", RULE_SEQ, left.bound + right.bound, [left, right])

    if isinstance(expr, Par):
        left = _derive(expr.left, bounds, costs, mode)
        right = _derive(expr.right, bounds, costs, mode)
        bound = max(left.bound, right.bound) + costs[AMP]
        return WcetNode("||", RULE_PAR, bound, [left, right])

    if isinstance(expr, Alt):
        left = _derive(expr.left, bounds, costs, mode)
        right = _derive(expr.right, bounds, costs, mode)
        bound = max(left.bound, right.bound) + costs[AT] + costs[PLUS]
        note = _alt_note(expr, left.bound, right.bound)
        return WcetNode(
            f"(+)[{expr.chooser_policy}]", RULE_ALT, bound, [left, right], note
        )

    if isinstance(expr, LoopNonAuto):
        body = _derive(expr.body, bounds, costs, mode)
        label = f"loop(manual {expr.restart_policy})"
        if mode == MEASURED:
            return WcetNode(label, RULE_LOOP_DELAY, body.bound + costs[DELAY], [body])
        return WcetNode(
            label,
            RULE_LOOP,
            body.bound,
            [body],
            "the restart Delay adds its own latency to a simulated activation",
        )

    if isinstance(expr, LoopAuto):
        body = _derive(expr.body, bounds, costs, mode)
        return WcetNode(
            f"loop(auto {expr.delay_ticks})",
            RULE_LOOP,
            body.bound,
            [body],
            f"restarts every {body.bound + expr.delay_ticks} ticks at most",
        )

    raise TypeError(
        f"`expr` expects a process expression, but got {type(expr).__name__}."
    )


def wcet(
    expr: ProcessExpr,
    elementary_bounds: Mapping[str, int],
    connector_cost_mode: str = ZERO,
    connector_costs: Optional[Mapping[str, int]] = None,
) -> WcetReport:
    """
    Compute a WCET bound of a composition from bounds of its leaves.

    The bound folds four rules over the expression tree: a sequence adds the
    bounds of its operands, a parallel composition takes their maximum plus
    the cost of ``&``, an alternative their maximum plus the costs of ``@``
    and ``+``, and a loop the bound of its body. A leaf bound below one tick
    is raised to one. Connectors cost nothing in ``"zero"`` mode. In
    ``"measured"`` mode their costs come from `connector_costs`, or from
    :func:`~procview.analysis.measure.connector_costs` when omitted, and a
    non-autonomous loop also pays for its Delay.

    Args:
        expr (ProcessExpr): The composition.
        elementary_bounds (Mapping[str, int]): Bound per leaf label or process
            name, see :func:`declared_bounds`.
        connector_cost_mode (str): ``"zero"`` or ``"measured"``.
        connector_costs (Mapping[str, int], optional): Cost per connector
            (``&``, ``@``, ``+``, ``Delay``) in measured mode.

    Returns:
        WcetReport: The bound with its derivation.

    Raises:
        MissingBoundError: If a leaf has no bound.

    Example::

        >>> report = wcet(Seq(Elem(p), Elem(q)), {"P": 3, "Q": 5})
        >>> report.bound
        8
    """
    if connector_cost_mode not in CONNECTOR_COST_MODES:
        raise ValueError(
            f"`connector_cost_mode` expects 'zero' or 'measured', "
            f"but got {connector_cost_mode!r}."
        )
    if connector_cost_mode == ZERO:
        costs = zero_costs()
    elif connector_costs is None:
        costs = measure_connector_costs()
    else:
        costs = {**zero_costs(), **connector_costs}

    derivation = _derive(expr, elementary_bounds, costs, connector_cost_mode)
    logger.debug(f"wcet = {derivation.bound} in {connector_cost_mode} mode")
    return WcetReport(expr, derivation.bound, derivation, connector_cost_mode, costs)
