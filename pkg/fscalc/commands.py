from __future__ import annotations

import json
import logging
import os
import pathlib
from fractions import Fraction
from functools import wraps

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.pretty import Pretty
from rich.table import Table
from rich.theme import Theme
from rich.tree import Tree

from .batch import QueryResult, run_batch, run_query
from .calculator import Calculator
from .constants import ConfigVars
from .errors import ConfigurationError, FscalcError, SpaceLiteralError
from .green import CATALOG, SYSTEMS
from .params import SpaceParam, parse_space
from .typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, TypeVar
from .util import as_rational

fscalc_theme = Theme(
    {
        "success": "bold green",
        "danger": "bold red",
        "error": "bold red",
        "space": "cyan",
        "rule": "magenta",
        "case": "yellow",
        "entity": "magenta",
        "option": "bold yellow",
    }
)

F = TypeVar("F", bound=Callable[..., Any])


class SpaceParamType(click.ParamType):
    """A space literal such as ``F:5/2,3,2`` or ``B:3/2,inf,inf``"""

    name = "space"

    def convert(
        self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]
    ) -> SpaceParam:
        if isinstance(value, SpaceParam):
            return value
        try:
            return parse_space(value)
        except SpaceLiteralError as e:
            self.fail(str(e), param, ctx)


class RationalType(click.ParamType):
    """An integer or ``a/b`` quotient"""

    name = "rational"

    def convert(
        self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]
    ) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return as_rational(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


SPACE = SpaceParamType()
RATIONAL = RationalType()


def configure_logging(verbose: bool) -> None:
    """
    Route the ``fscalc`` logger to stderr through rich: everything with
    ``--verbose``, otherwise from the level named by ``FSCALC_LOG_LEVEL``.
    """
    logger = logging.getLogger("fscalc")
    level_name = os.environ.get(ConfigVars.LOG_LEVEL, "WARNING").upper()
    level = logging.DEBUG if verbose else logging.getLevelName(level_name)
    if not isinstance(level, int):
        raise ConfigurationError(
            f"{ConfigVars.LOG_LEVEL} names no logging level: {level_name!r}"
        )
    for handler in [h for h in logger.handlers if isinstance(h, RichHandler)]:
        logger.removeHandler(handler)
    handler = RichHandler(
        console=Console(stderr=True, theme=fscalc_theme), show_time=False, show_path=False
    )
    logger.addHandler(handler)
    logger.setLevel(level)


def make_calculator(
    eps: Optional[Fraction] = None, max_steps: Optional[int] = None
) -> Calculator:
    try:
        return Calculator(eps, max_steps)
    except ConfigurationError as e:
        raise click.UsageError(str(e)) from e


def render_value(value: Any) -> Any:
    if isinstance(value, bool):
        return "[success]yes[/success]" if value else "[danger]no[/danger]"
    if isinstance(value, str):
        return f"[space]{escape(value)}[/space]"
    return Pretty(value)


def render_trace_tree(trace: Mapping[str, Any]) -> Tree:
    verdict = trace["verdict"]
    status = verdict["status"]
    style = "success" if status == "certified" else "error"
    tree = Tree(
        f"{trace['problem']} bootstrap, n = {trace['n']}, eps = {trace['eps']}: "
        f"[space]{trace['start']}[/space] → [space]{trace['target']}[/space] "
        f"[{style}]{status}[/{style}]"
    )
    for step in trace["steps"]:
        label = (
            f"{step['index']:>3} [rule]{step['rule']}[/rule] "
            f"{escape(', '.join(step['input']))} → [space]{escape(step['output'])}[/space]"
        )
        if "case" in step:
            label += f" [case]({step['case']})[/case]"
        node = tree.add(label)
        if "deficit" in step:
            critical = " at the critical line" if step.get("at_critical") else ""
            node.add(f"deficit {step['deficit']}{critical}")
        if "violation" in step:
            violation = step["violation"]
            node.add(
                f"[danger]{violation['operator']} undefined on "
                f"{escape(violation['space'])} (threshold {violation['threshold']})[/danger]"
            )
    if verdict.get("data_spaces"):
        data = tree.add("data spaces")
        for name, space in sorted(verdict["data_spaces"].items()):
            data.add(f"{name} ∈ [space]{escape(space)}[/space]")
    return tree


def render_result(result: QueryResult) -> Table:
    table = Table(title=result.command)
    table.add_column("Field")
    table.add_column("Value")
    for key, value in result.payload.items():
        if key in ("trace", "svg"):
            continue
        table.add_row(key, render_value(value))
    table.add_row(
        "verdict",
        "[success]accepted[/success]" if result.accepted else "[error]rejected[/error]",
    )
    return table


def report(ctx: click.Context, result: QueryResult, as_json: bool) -> None:
    """
    Print a result and exit with 1 and a one line reason when it was
    rejected. Malformed input is a usage error.
    """
    if result.invalid:
        raise click.UsageError(result.reason, ctx=ctx)
    if as_json:
        click.echo(json.dumps(result.as_dict(), indent=2, sort_keys=True, ensure_ascii=False))
    else:
        console = Console(theme=fscalc_theme)
        if "trace" in result.payload:
            console.print(render_trace_tree(result.payload["trace"]))
        else:
            console.print(render_result(result))
    if not result.accepted:
        click.echo(f"rejected: {result.reason}", err=True)
        ctx.exit(1)


def json_option(func: F) -> F:
    return click.option(
        "--json", "as_json", is_flag=True, help="Print the result as JSON"
    )(func)


def domain_options(func: F) -> F:
    func = click.option(
        "--components",
        default=1,
        show_default=True,
        type=click.IntRange(min=1),
        help="Number of boundary components",
    )(func)
    return click.option(
        "--n", "n", required=True, type=click.IntRange(min=2), help="Dimension of the domain"
    )(func)


def query_command(command: str) -> Callable[[F], F]:
    """
    Turn the options of a command into a query, run it and report the
    result.
    """

    def decorator(func: F) -> F:
        @wraps(func)
        def wrapper(as_json: bool = False, **options: Any) -> None:
            ctx = click.get_current_context()
            query: Dict[str, Any] = {"command": command}
            query.update(func(**options) or options)
            result = run_query(query, ctx.obj or make_calculator())
            report(ctx, result, as_json)

        return wrapper  # type: ignore[return-value]

    return decorator


@click.group(
    help="Parameter calculus for Besov and Triebel-Lizorkin spaces",
    invoke_without_command=True,
)
@click.option(
    "--batch",
    type=click.File("r"),
    default=None,
    help="Run a JSON list of queries and print their results",
)
@click.option("-v", "--verbose", is_flag=True, help="Log every step to stderr")
@click.pass_context
def cli(ctx: click.Context, batch: Optional[Any], verbose: bool) -> None:
    try:
        configure_logging(verbose)
    except ConfigurationError as e:
        raise click.UsageError(str(e)) from e
    if batch is not None:
        try:
            queries = json.load(batch)
        except json.JSONDecodeError as e:
            raise click.BadParameter(f"not valid JSON: {e}", param_hint="--batch")
        if not isinstance(queries, list):
            raise click.BadParameter("expected a list of queries", param_hint="--batch")
        results = run_batch(queries, make_calculator())
        click.echo(
            json.dumps(
                [result.as_dict() for result in results],
                indent=2,
                sort_keys=True,
                ensure_ascii=False,
            )
        )
        invalid = [result for result in results if result.invalid]
        if invalid:
            click.echo(f"invalid: {len(invalid)} of {len(results)} queries", err=True)
            ctx.exit(2)
        rejected = [result for result in results if not result.accepted]
        if rejected:
            click.echo(
                f"rejected: {len(rejected)} of {len(results)} queries", err=True
            )
            ctx.exit(1)
        ctx.exit(0)
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())
        ctx.exit(2)


@cli.command(help="Check whether a space lies in D_k")
@click.option("--k", "k", required=True, type=int, help="Class k")
@click.option("--space", required=True, type=SPACE, help="Space literal")
@domain_options
@json_option
@query_command("dk")
def dk(**options: Any) -> None:
    pass


@cli.command(help="Check whether a space lies in a problem's sector")
@click.option(
    "--problem",
    type=click.Choice(["dirichlet", "neumann", "neumann-safe"]),
    default="dirichlet",
    show_default=True,
)
@click.option("--space", required=True, type=SPACE, help="Space literal")
@domain_options
@json_option
@query_command("sector")
def sector(**options: Any) -> None:
    pass


@cli.command(help="Name the classical space a parameter triple identifies")
@click.option("--space", required=True, type=SPACE, help="Space literal")
@click.option("--n", "n", type=click.IntRange(min=2), help="Dimension, for the Sobolev index")
@json_option
@query_command("classify")
def classify(**options: Any) -> None:
    pass


@cli.command(help="Decide whether space A embeds into space B")
@click.option("--a", "a", required=True, type=SPACE, help="The smaller space")
@click.option("--b", "b", required=True, type=SPACE, help="The larger space")
@domain_options
@json_option
@query_command("embed")
def embed(**options: Any) -> None:
    pass


@cli.command(help="Least upper bound of two spaces")
@click.option("--a", "a", required=True, type=SPACE)
@click.option("--b", "b", required=True, type=SPACE)
@domain_options
@json_option
@query_command("join")
def join(**options: Any) -> None:
    pass


@cli.command(help="Check boundedness of multiplication A x B -> TARGET")
@click.option("--a", "a", required=True, type=SPACE)
@click.option("--b", "b", required=True, type=SPACE)
@click.option("--target", required=True, type=SPACE, help="Receiving space")
@domain_options
@json_option
@query_command("product")
def product(**options: Any) -> None:
    pass


@cli.command(help="Optimal receiving exponent p* of a product")
@click.option("--a", "a", required=True, type=SPACE)
@click.option("--b", "b", required=True, type=SPACE)
@domain_options
@json_option
@query_command("pstar")
def pstar(**options: Any) -> None:
    pass


@cli.command(help="Space receiving the nonlinearity u d_1 u")
@click.option("--space", required=True, type=SPACE, help="Space of u")
@click.option("--sharp", is_flag=True, help="Factor through smoothness s-1")
@click.option("--eps", type=RATIONAL, default=None, help="Deficit loss at s = n/p")
@domain_options
@json_option
@query_command("bmap")
def bmap(**options: Any) -> None:
    pass


@cli.command("op-apply", help="Apply a catalog operator or system to a space")
@click.option(
    "--op", required=True, type=click.Choice(sorted([*CATALOG, *SYSTEMS])), help="Operator"
)
@click.option("--space", required=True, type=SPACE, help="Input space")
@click.option("--target", type=SPACE, default=None, help="Target of the operator R")
@click.option("--scale", type=click.Choice(["B", "F"]), default=None, help="Output scale of K_D/K_N")
@domain_options
@json_option
@query_command("op-apply")
def op_apply(**options: Any) -> None:
    pass


@cli.command(help="Certify a regularity bootstrap from START to TARGET")
@click.option(
    "--problem",
    type=click.Choice(["dirichlet", "neumann"]),
    default="dirichlet",
    show_default=True,
)
@click.option("--start", required=True, type=SPACE, help="Space of the solution")
@click.option("--target", required=True, type=SPACE, help="Space to certify")
@click.option("--eps", type=RATIONAL, default=None, help="Deficit loss at s = n/p")
@click.option("--max-steps", type=click.IntRange(min=1), default=None, help="Cap on gains")
@click.option(
    "--emit-svg",
    type=click.Path(dir_okay=False, path_type=pathlib.Path),
    default=None,
    help="Write the diagram of the trace",
)
@click.option(
    "--output",
    type=click.Path(dir_okay=False, path_type=pathlib.Path),
    default=None,
    help="Write the trace as JSON",
)
@domain_options
@json_option
@click.pass_context
def bootstrap(
    ctx: click.Context,
    as_json: bool,
    emit_svg: Optional[pathlib.Path],
    output: Optional[pathlib.Path],
    eps: Optional[Fraction],
    max_steps: Optional[int],
    **options: Any,
) -> None:
    calculator = make_calculator(eps, max_steps)
    result = run_query({"command": "bootstrap", **options}, calculator)
    trace = result.payload.get("trace")
    if trace is not None:
        if output:
            output.write_text(
                json.dumps(trace, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                encoding="utf-8",
            )
        if emit_svg:
            rendered = run_query({"command": "render", "trace": trace}, calculator)
            emit_svg.write_text(rendered.payload["svg"], encoding="utf-8")
    report(ctx, result, as_json)


@cli.command("ns-exist", help="Existence for the stationary Navier-Stokes equations")
@click.option("--space", required=True, type=SPACE, help="Space of the velocity")
@click.option("--g-zero", is_flag=True, help="The divergence datum vanishes")
@click.option("--flux-zero", is_flag=True, help="Zero flux through every component")
@click.option("--disconnected", is_flag=True, help="The domain is not connected")
@domain_options
@json_option
@query_command("ns-exist")
def ns_exist(disconnected: bool, **options: Any) -> Dict[str, Any]:
    return {**options, "connected": not disconnected}


@cli.command(help="Render a trace JSON file as SVG")
@click.option("--trace", "trace_file", required=True, type=click.File("r"))
@click.option(
    "--output",
    type=click.Path(dir_okay=False, path_type=pathlib.Path),
    default=None,
    help="Write the SVG here instead of stdout",
)
@click.pass_context
def render(ctx: click.Context, trace_file: Any, output: Optional[pathlib.Path]) -> None:
    result = run_query({"command": "render", "trace": _load(trace_file)})
    if not result.accepted:
        raise click.UsageError(result.reason, ctx=ctx)
    if output:
        output.write_text(result.payload["svg"], encoding="utf-8")
    else:
        click.echo(result.payload["svg"], nl=False)


@cli.command(help="Replay a trace JSON file and validate every step")
@click.option("--trace", "trace_file", required=True, type=click.File("r"))
@json_option
@click.pass_context
def replay(ctx: click.Context, trace_file: Any, as_json: bool) -> None:
    report(ctx, run_query({"command": "replay", "trace": _load(trace_file)}), as_json)


def _load(trace_file: Any) -> Any:
    try:
        return json.load(trace_file)
    except json.JSONDecodeError as e:
        raise click.BadParameter(f"not valid JSON: {e}", param_hint="--trace")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Console entry point.

    :return: 0 when accepted or certified, 1 when rejected, 2 for usage
     errors
    """
    try:
        result = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="fscalc",
            standalone_mode=False,
        )
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except FscalcError as e:
        click.echo(f"error: {e}", err=True)
        return 2
    return result if isinstance(result, int) else 0


__all__: List[str] = ["cli", "main"]
