import contextlib
import logging
from collections.abc import Iterator
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Annotated

import typer

from probregex.axioms_check import run_axioms_check
from probregex.config import config
from probregex.constants import (
    EQUAL_TEXT,
    EXIT_ALPHABET_ERROR,
    EXIT_DIFFER,
    EXIT_INVARIANT_ERROR,
    EXIT_PARSE_ERROR,
    EXIT_UNKNOWN_STATE,
    LANG_EQUAL_NOT_BISIMILAR_TEXT,
    ROUNDTRIP_OK_TEXT,
)
from probregex.decorators import log_command_invocation
from probregex.deriv import reachable
from probregex.equiv import Distinguished, EquivVerdict, bisim_classes, expr_equiv, lang_equal_not_bisimilar, lang_equiv
from probregex.errors import (
    AlphabetError,
    AxiomInstantiationError,
    ExprSyntaxError,
    GptsSchemaError,
    InvalidGptsError,
    SystemInvariantError,
    UnknownStateError,
)
from probregex.expr import Expr, is_letter, letters
from probregex.gpts import disjoint_union, word_prob, word_table
from probregex.gpts_io import dumps, load, to_dot
from probregex.logging_utils import configure_logging
from probregex.parser import parse, render, render_decimal, render_prob
from probregex.solver import gpts_to_expr

logger = logging.getLogger(__name__)

cli_app = typer.Typer(
    help="Probabilistic regular expressions: evaluate, compare, derive and solve.",
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)


class OutputFormat(str, Enum):
    json = "json"
    dot = "dot"


@contextlib.contextmanager
def _exit_on_error() -> Iterator[None]:
    """Report library errors on stderr and exit with the matching code."""
    try:
        yield
    except (ExprSyntaxError, GptsSchemaError, InvalidGptsError, OSError) as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_PARSE_ERROR) from e
    except AlphabetError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_ALPHABET_ERROR) from e
    except UnknownStateError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_UNKNOWN_STATE) from e
    except SystemInvariantError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_INVARIANT_ERROR) from e


def _declared_alphabet(override: str | None) -> list[str] | None:
    """Letters listed in an ``--alphabet`` value such as ``ab`` or ``a,b``."""
    if override is None:
        return None
    symbols = sorted(set(override.replace(",", "").replace(" ", "")))
    for symbol in symbols:
        if not is_letter(symbol):
            raise AlphabetError(f"Invalid letter {symbol!r} in --alphabet: letters are single characters a-z")
    return symbols


def _alphabet(declared: list[str] | None, exprs: list[Expr], words: list[str]) -> list[str]:
    """The declared alphabet, else every letter used by the arguments."""
    if declared is not None:
        return declared
    symbols = set().union(*(letters(e) for e in exprs))
    for word in words:
        for position, symbol in enumerate(word):
            if not is_letter(symbol):
                raise AlphabetError(f"Invalid letter {symbol!r} at position {position} of the word")
            symbols.add(symbol)
    return sorted(symbols)


def _format_value(value: Fraction, approx: int | None) -> str:
    text = render_prob(value)
    return f"{text} ~= {render_decimal(value, approx)}" if approx is not None else text


def format_verdict(verdict: EquivVerdict) -> str:
    if isinstance(verdict, Distinguished):
        left, right = render_prob(verdict.left_value), render_prob(verdict.right_value)
        return f'DIFFER at "{verdict.word}": {left} vs {right}'
    return EQUAL_TEXT


@cli_app.callback()
def main(
    log_level: Annotated[
        str | None, typer.Option("--log-level", help="Diagnostics level on stderr (default from config).")
    ] = None,
) -> None:
    """Probabilistic regular expressions toolkit."""
    configure_logging(log_level or config.log_level)


@cli_app.command("eval")
@log_command_invocation
def eval_command(
    expr: Annotated[str, typer.Argument(help="Expression, e.g. 'a;a^[1/4]'.")],
    word: Annotated[str, typer.Argument(help="Word to evaluate; empty for the empty word.")] = "",
    alphabet: Annotated[str | None, typer.Option("--alphabet", help="Letters of the alphabet, e.g. 'ab'.")] = None,
    approx: Annotated[int | None, typer.Option("--approx", help="Also print N decimal digits.")] = None,
    upto: Annotated[int | None, typer.Option("--upto", help="Print every word up to length N instead.")] = None,
) -> None:
    """Print the probability that EXPR generates WORD."""
    approx = approx if approx is not None else config.approx_digits
    with _exit_on_error():
        declared = _declared_alphabet(alphabet)
        e = parse(expr, declared)
        symbols = _alphabet(declared, [e], [word])
        g = reachable(e, symbols)
        root = g.start[0]
        if upto is not None:
            for w, value in word_table(g, root, upto).items():
                typer.echo(f'"{w}": {_format_value(value, approx)}')
            return
        typer.echo(_format_value(word_prob(g, root, word), approx))


@cli_app.command("equiv")
@log_command_invocation
def equiv_command(
    left: Annotated[str, typer.Argument(help="First expression.")],
    right: Annotated[str, typer.Argument(help="Second expression.")],
    alphabet: Annotated[str | None, typer.Option("--alphabet", help="Letters of the alphabet, e.g. 'ab'.")] = None,
) -> None:
    """Decide whether two expressions denote the same probabilistic language."""
    with _exit_on_error():
        declared = _declared_alphabet(alphabet)
        e, f = parse(left, declared), parse(right, declared)
        verdict = expr_equiv(e, f)
    typer.echo(format_verdict(verdict))
    if isinstance(verdict, Distinguished):
        raise typer.Exit(EXIT_DIFFER)


@cli_app.command("derive")
@log_command_invocation
def derive_command(
    expr: Annotated[str, typer.Argument(help="Expression to build the derivative automaton of.")],
    out: Annotated[Path | None, typer.Option("--out", "-o", help="Output file; stdout when omitted.")] = None,
    output_format: Annotated[OutputFormat, typer.Option("--format", help="Output format.")] = OutputFormat.json,
) -> None:
    """Write the derivative automaton of EXPR as JSON or DOT."""
    with _exit_on_error():
        g = reachable(parse(expr))
        text = dumps(g) if output_format is OutputFormat.json else to_dot(g)
        if out is None:
            typer.echo(text, nl=False)
        else:
            out.write_text(text, encoding="utf-8")
            logger.info(f"Wrote {len(g.states)} states to {out}")


@cli_app.command("solve")
@log_command_invocation
def solve_command(
    gpts: Annotated[Path, typer.Argument(help="Transition system JSON file.")],
    state: Annotated[str, typer.Argument(help="State to convert into an expression.")],
    self_check: Annotated[
        bool, typer.Option("--self-check", help="Verify the expression against the state's language.")
    ] = False,
) -> None:
    """Print an expression generating the same language as STATE."""
    with _exit_on_error():
        g = load(gpts)
        e = gpts_to_expr(g, state)
        typer.echo(render(e))
        if self_check:
            union = disjoint_union(reachable(e), g)
            verdict = lang_equiv(union, union.start[0], "R." + state)
            if isinstance(verdict, Distinguished):
                typer.echo(f"ROUNDTRIP FAILED: {format_verdict(verdict)}")
                raise typer.Exit(EXIT_DIFFER)
            typer.echo(ROUNDTRIP_OK_TEXT)


@cli_app.command("bisim")
@log_command_invocation
def bisim_command(
    gpts: Annotated[Path, typer.Argument(help="Transition system JSON file.")],
    cross_check: Annotated[
        bool, typer.Option("--cross-check", help="Also list language-equal pairs that are not bisimilar.")
    ] = False,
) -> None:
    """Print the probabilistic bisimilarity classes, one block per line."""
    with _exit_on_error():
        g = load(gpts)
        partition = bisim_classes(g)
        for block in partition.blocks():
            typer.echo(" ".join(sorted(block)))
        if cross_check:
            pairs = lang_equal_not_bisimilar(g, partition)
            if pairs:
                listed = " ".join(f"({x},{y})" for x, y in pairs)
                typer.echo(f"{LANG_EQUAL_NOT_BISIMILAR_TEXT}: {listed}")


@cli_app.command("axioms-check")
@log_command_invocation
def axioms_check_command(
    seed: Annotated[int, typer.Option("--seed", help="Random seed.")] = config.axioms_seed,
    trials: Annotated[int, typer.Option("--trials", min=1, help="Instances per schema.")] = config.axioms_trials,
    depth: Annotated[int, typer.Option("--depth", min=0, help="Maximum depth of generated subexpressions.")] = (
        config.axioms_max_depth
    ),
    max_denominator: Annotated[
        int, typer.Option("--max-denominator", min=1, help="Largest denominator of generated probabilities.")
    ] = config.axioms_max_denominator,
    schema: Annotated[
        list[str] | None, typer.Option("--schema", help="Only check these schemas (repeatable).")
    ] = None,
) -> None:
    """Check every axiom schema on random instances with the exact equivalence decider."""
    try:
        report = run_axioms_check(seed, trials, depth, max_denominator, schema or None)
    except AxiomInstantiationError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_PARSE_ERROR) from e
    for result in report.results:
        line = f"{result.name}: {result.passed}/{result.passed + result.failed} passed"
        if result.skipped:
            line += f" ({result.skipped} draws skipped)"
        typer.echo(line)
        for failure in result.failures:
            typer.echo(f"  {result.name}: {failure}", err=True)
    if not report.ok:
        raise typer.Exit(EXIT_DIFFER)


def run_cli() -> None:
    """Entry point of the ``probregex`` console script."""
    cli_app()


if __name__ == "__main__":
    run_cli()
