import click
from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    TextColumn,
    TimeElapsedColumn,
)
from rich.tree import Tree

from procview.analysis.measure import measure_wcet
from procview.analysis.query import evaluate_query, parse_query
from procview.analysis.wcet import CONNECTOR_COST_MODES, ZERO, declared_bounds, wcet
from procview.composition.expr import leaves
from procview.config import DEFAULT_HORIZON
from procview.dsl.parser import check as check_document
from procview.dsl.parser import parse
from procview.errors import (
    CausalityCycleError,
    ChannelTypeError,
    HorizonExceededError,
    InvalidSpecError,
    MeasurementInconclusiveError,
    MissingBoundError,
    NameCollisionError,
    NoEntryPointError,
    SpecSyntaxError,
    SpecTypeError,
    UnknownStreamError,
    UnresolvedReferenceError,
    WireTypeMismatchError,
    ZenoRiskError,
)
from procview.export.dot import export_dot
from procview.export.pnml import export_pnml
from procview.export.trace_format import TEXT, TRACE_FORMATS, format_trace
from procview.logging_config import configure_logging
from procview.simulation.runner import run

DECLARED = "declared"
MEASURED = "measured"
DOT = "dot"
PNML = "pnml"

# Errors reported as diagnostics (exit code 1)
DIAGNOSTIC_ERRORS = (
    CausalityCycleError,
    ChannelTypeError,
    HorizonExceededError,
    InvalidSpecError,
    MeasurementInconclusiveError,
    MissingBoundError,
    NameCollisionError,
    NoEntryPointError,
    SpecSyntaxError,
    SpecTypeError,
    UnknownStreamError,
    UnresolvedReferenceError,
    WireTypeMismatchError,
    ZenoRiskError,
)


def procview_echo(message, *args, fg=None, **kwargs):
    """
    Print a message to the console with a specific prefix.

    Args:
        message (str): The message to print.
        *args: Additional arguments to pass to click.secho.
        fg (str): The foreground color for the message.
        **kwargs: Additional keyword arguments to pass to click.secho.
    """
    prefix = click.style("[procview] ", fg="blue")
    click.secho(prefix + message, fg=fg, *args, **kwargs)


def _fail(error: Exception):
    message = error.args[0] if isinstance(error, KeyError) else str(error)
    procview_echo(f"{type(error).__name__}: {message}", fg="red", err=True)
    click.get_current_context().exit(1)


def _load(path: str):
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


def _write(text: str, out) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)


def _derivation_tree(node, tree=None) -> Tree:
    label = f"{node.label} = [bold]{node.bound}[/bold]  [dim]{node.rule}[/dim]"
    if node.note:
        label += f"  [yellow]{node.note}[/yellow]"
    branch = Tree(label) if tree is None else tree.add(label)
    for child in node.children:
        _derivation_tree(child, branch)
    return branch


def _progress() -> Progress:
    return Progress(
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=Console(stderr=True),
        transient=True,
    )


file_argument = click.argument(
    "file", type=click.Path(exists=True, dir_okay=False, readable=True)
)
compose_option = click.option(
    "--compose", "compose", required=True, help="Composition (or process) name."
)
horizon_option = click.option(
    "--horizon",
    type=click.IntRange(min=1),
    default=DEFAULT_HORIZON,
    show_default=True,
    help="Number of simulated ticks.",
)


@click.group()
@click.option(
    "--verbosity",
    "-v",
    default="warning",
    show_default=True,
    type=click.Choice(
        ["debug", "info", "warning", "error", "critical"], case_sensitive=False
    ),
    help="Set the logging verbosity level.",
)
def cli(verbosity):
    """Process view CLI: check, simulate, analyse and export .pspec documents."""
    configure_logging(verbosity)


@cli.command()
@file_argument
def check(file):
    """
    Parse and validate a document.

    Every composition is also compiled and scheduled. Prints one line per
    diagnostic and exits with 1 if there is any.
    """
    with open(file, encoding="utf-8") as f:
        diagnostics = check_document(f.read())
    if diagnostics:
        for d in diagnostics:
            procview_echo(str(d), fg="red")
        procview_echo(f"{len(diagnostics)} problem(s) found.")
        click.get_current_context().exit(1)
    counts = ", ".join(f"{n} {ns}" for ns, n in _load(file).declarations().items())
    procview_echo(f"OK ({counts}).", fg="green")


@cli.command()
@file_argument
@compose_option
@click.option("--env", "env", default=None, help="Environment name.")
@horizon_option
@click.option(
    "--trace-out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Write the trace to this file instead of stdout.",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(TRACE_FORMATS),
    default=TEXT,
    show_default=True,
    help="Trace format.",
)
def simulate(file, compose, env, horizon, trace_out, fmt):
    """Simulate a composition in an environment and print its trace."""
    try:
        doc = _load(file)
        network = doc.network(compose)
        inputs = None if env is None else doc.env_inputs(env, network, horizon)
        trace = run(network, inputs, horizon)
    except DIAGNOSTIC_ERRORS as e:
        _fail(e)

    _write(format_trace(trace, fmt), trace_out)
    exits = len(trace.stream(network.exit).nonempty_ticks()) if network.exit else 0
    summary = (
        f"Simulated {compose!r} for {horizon} ticks: {len(network.components)} "
        f"components, {exits} exit event(s), {len(trace.warnings)} warning(s)."
    )
    if trace.first_violation is not None:
        summary += f" Assumptions violated from t={trace.first_violation}."
    procview_echo(summary, err=trace_out is None)


@cli.command(name="wcet")
@file_argument
@compose_option
@click.option(
    "--bounds",
    type=click.Choice([DECLARED, MEASURED]),
    default=DECLARED,
    show_default=True,
    help="Where the bounds of elementary processes come from.",
)
@click.option(
    "--connector-cost",
    type=click.Choice(CONNECTOR_COST_MODES),
    default=ZERO,
    show_default=True,
    help="Cost of the &, @, + and Delay connectors.",
)
@horizon_option
def wcet_command(file, compose, bounds, connector_cost, horizon):
    """Compute the WCET bound of a composition with its derivation."""
    try:
        expr = _load(file).process_expr(compose)
        if bounds == DECLARED:
            elementary = declared_bounds(expr)
        else:
            elementary = {}
            labels = {elem.label: elem for _, elem in leaves(expr)}
            with _progress() as progress:
                task = progress.add_task("Measuring processes", total=len(labels))
                for label, elem in labels.items():
                    elementary[label] = measure_wcet(elem, horizon=horizon)
                    progress.advance(task)
        report = wcet(expr, elementary, connector_cost)
    except DIAGNOSTIC_ERRORS as e:
        _fail(e)

    procview_echo(f"wcet({compose}) = {report.bound} ticks")
    Console().print(_derivation_tree(report.derivation))


@cli.command()
@file_argument
@compose_option
@click.option("--env", "env", required=True, help="Environment name.")
@horizon_option
@click.option(
    "--query",
    "queries",
    multiple=True,
    required=True,
    help="Activity query, e.g. 'exact(P, *, 1)'. May be repeated.",
)
def activity(file, compose, env, horizon, queries):
    """Evaluate activity queries on a simulated trace."""
    try:
        parsed = [parse_query(q) for q in queries]
        doc = _load(file)
        network = doc.network(compose)
        trace = run(network, doc.env_inputs(env, network, horizon), horizon)
        results = [evaluate_query(trace, q) for q in parsed]
    except DIAGNOSTIC_ERRORS as e:
        _fail(e)

    for result in results:
        procview_echo(str(result), fg="green" if result.holds else "yellow")


@cli.command()
@file_argument
@compose_option
@click.option(
    "--to",
    "target",
    type=click.Choice([DOT, PNML]),
    required=True,
    help="Output format.",
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Output file; stdout when omitted.",
)
def export(file, compose, target, out):
    """Export a composition as a Graphviz graph or a PNML Petri net."""
    try:
        doc = _load(file)
        if target == DOT:
            text = export_dot(doc.network(compose))
        else:
            _, text = export_pnml(doc.process_expr(compose), compose)
    except DIAGNOSTIC_ERRORS as e:
        _fail(e)

    _write(text, out)
    if out is not None:
        procview_echo(f"Wrote {target.upper()} of {compose!r} to {out}.")


if __name__ == "__main__":
    cli()
