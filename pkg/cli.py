"""
Command-line interface for udcodes.

Usage:
    udcodes decide -n 2 -w 1,00,1000          # Sardinas-Patterson decision
    udcodes decide -n 2 -w 1,00,100 --witness # ... with an ambiguous word
    udcodes count pr -n 2 -L 1,2,6            # closed-form count
    udcodes count ud -n 3 -L 1,1,2 --method both
    udcodes rho -n 2 -L 1,2,4                 # exact ratio of prefix codes
    udcodes verify theorem4 --n-max 3 --len-max 4
    udcodes table --family 12c -n 2 --c-max 30 --format csv

Results go to standard output as one JSON document (CSV for table on
request); logs go to standard error. Exit codes: 0 success or pass,
1 verification failure, 2 usage or parse error, 3 budget exceeded,
4 no closed form for the requested family.
"""
import csv
import io
import logging
import sys
from typing import Any, Callable, Dict, List

import click

from claims import claim_names
from commands import CommandRunner
from config import DEFAULT_BUDGET, DEFAULT_DECIMAL_DIGITS, default_threads
from errors import (
    AlphabetMismatchError,
    PreconditionError,
    SizeLimitError,
    UdCodesError,
    UncoveredFamilyError,
    UndefinedRatioError,
    WordFormatError,
)
from models import CountKind, CountMethod, Family, OutputDocument, RhoMethod, render_ratio
from words import LengthDistribution


logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_UNCOVERED = 4


def exit_code_for(error: UdCodesError) -> int:
    """Map a domain error to the process exit code"""
    if isinstance(error, SizeLimitError):
        return EXIT_BUDGET
    if isinstance(error, UncoveredFamilyError):
        return EXIT_UNCOVERED
    if isinstance(error, (WordFormatError, AlphabetMismatchError, PreconditionError, UndefinedRatioError)):
        return EXIT_USAGE
    return EXIT_FAILURE


def configure_logging(verbose: bool) -> None:
    """Log to stderr; stdout carries only the output document"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def _split_words(value: str) -> List[str]:
    return [w.strip() for w in value.split(",")]


def _parse_lengths(ctx, param, value: str) -> LengthDistribution:
    try:
        return LengthDistribution.parse(value)
    except WordFormatError as e:
        raise click.BadParameter(str(e))


def _echo_inputs(params: Dict[str, Any]) -> Dict[str, Any]:
    return {k: list(v) if isinstance(v, LengthDistribution) else v for k, v in params.items()}


def _emit(ctx: click.Context, command: str, produce: Callable[[], OutputDocument]) -> None:
    """Run a command, print its document and exit with the matching code"""
    try:
        document = produce()
    except UdCodesError as e:
        logger.debug(f"{command} failed: {type(e).__name__}: {e}")
        click.echo(f"Error: {e}", err=True)
        failed = OutputDocument(
            command=command,
            inputs=_echo_inputs(ctx.params),
            results={"error": str(e), "error_type": type(e).__name__},
            status="error",
        )
        click.echo(failed.model_dump_json(indent=2))
        ctx.exit(exit_code_for(e))
    click.echo(document.model_dump_json(indent=2))
    if document.status == "fail":
        ctx.exit(EXIT_FAILURE)


@click.group()
@click.version_option(version="0.1.0", prog_name="udcodes")
@click.option('--budget', type=click.IntRange(min=1), default=DEFAULT_BUDGET, show_default=True,
              help='Maximum number of tuples an enumeration may visit')
@click.option('--threads', type=click.IntRange(min=1), default=None,
              help='Worker processes (default: available parallelism)')
@click.option('--verbose', '-v', is_flag=True, help='Debug logging on stderr')
@click.pass_context
def cli(ctx: click.Context, budget: int, threads: int, verbose: bool):
    """
    Unique decodability, prefix-code counting and ratio verification.
    """
    configure_logging(verbose)
    ctx.obj = CommandRunner(budget=budget, workers=threads or default_threads())


@cli.command()
@click.option('-n', '--alphabet', 'n', type=click.IntRange(min=2), required=True, help='Alphabet size')
@click.option('-w', '--words', required=True, help='Comma-separated codewords, e.g. 1,00,100')
@click.option('--trace', is_flag=True, help='Include the dangling-set trace')
@click.option('--witness', is_flag=True, help='Search for an ambiguous word when not a code')
@click.option('--max-len', type=click.IntRange(min=1), default=None,
              help='Witness length bound (default: derived from the code)')
@click.pass_context
def decide(ctx: click.Context, n: int, words: str, trace: bool, witness: bool, max_len: int):
    """Decide whether a sequence of words is uniquely decodable."""
    runner: CommandRunner = ctx.obj
    _emit(ctx, "decide", lambda: runner.decide(n, _split_words(words), trace, witness, max_len))


@cli.command()
@click.argument('kind', type=click.Choice([k.value for k in CountKind]))
@click.option('-n', '--alphabet', 'n', type=click.IntRange(min=2), required=True, help='Alphabet size')
@click.option('-L', '--lengths', required=True, callback=_parse_lengths, help='Comma-separated lengths')
@click.option('--method', type=click.Choice([m.value for m in CountMethod]), default=CountMethod.FORMULA.value,
              show_default=True)
@click.pass_context
def count(ctx: click.Context, kind: str, n: int, lengths: LengthDistribution, method: str):
    """Count codes (ud) or prefix codes (pr) with a length distribution."""
    runner: CommandRunner = ctx.obj
    _emit(ctx, "count", lambda: runner.count(CountKind(kind), n, lengths, CountMethod(method)))


@cli.command()
@click.option('-n', '--alphabet', 'n', type=click.IntRange(min=2), required=True, help='Alphabet size')
@click.option('-L', '--lengths', required=True, callback=_parse_lengths, help='Comma-separated lengths')
@click.option('--method', type=click.Choice([m.value for m in RhoMethod]), default=None,
              help='Force one evaluation path')
@click.option('--cross-check', is_flag=True, help='Compare closed form and census where both apply')
@click.pass_context
def rho(ctx: click.Context, n: int, lengths: LengthDistribution, method: str, cross_check: bool):
    """Exact proportion of prefix codes among codes."""
    runner: CommandRunner = ctx.obj
    chosen = RhoMethod(method) if method else None
    _emit(ctx, "rho", lambda: runner.rho(n, lengths, chosen, cross_check))


@cli.command()
@click.argument('claim')
@click.option('--n-max', type=click.IntRange(min=2), default=3, show_default=True)
@click.option('--len-max', type=click.IntRange(min=1), default=4, show_default=True,
              help='Largest codeword length (total length for sequence sweeps)')
@click.option('--c-max', type=click.IntRange(min=1), default=12, show_default=True)
@click.pass_context
def verify(ctx: click.Context, claim: str, n_max: int, len_max: int, c_max: int):
    """Check a named claim over a finite grid; exits 1 on any failing point."""
    runner: CommandRunner = ctx.obj
    _emit(ctx, "verify", lambda: runner.verify(claim, n_max, len_max, c_max))


@cli.command(name='claims')
def list_claims():
    """List the claim names accepted by verify."""
    for name in claim_names():
        click.echo(name)


@cli.command()
@click.option('--family', type=click.Choice([f.value for f in Family]), required=True)
@click.option('-n', '--alphabet', 'n', type=click.IntRange(min=2), required=True, help='Alphabet size')
@click.option('--c-max', type=click.IntRange(min=1), required=True)
@click.option('--digits', type=click.IntRange(min=1), default=DEFAULT_DECIMAL_DIGITS, show_default=True)
@click.option('--format', 'output_format', type=click.Choice(['json', 'csv']), default='json', show_default=True)
@click.pass_context
def table(ctx: click.Context, family: str, n: int, c_max: int, digits: int, output_format: str):
    """Convergence of the ratio along (1,1,c) or binary (1,2,c)."""
    runner: CommandRunner = ctx.obj
    if output_format == 'json':
        _emit(ctx, "table", lambda: runner.table(Family(family), n, c_max, digits))
        return

    try:
        convergence = runner.convergence(Family(family), n, c_max, digits)
    except UdCodesError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(exit_code_for(e))
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(['c', 'rho', 'rho_decimal', 'gap_decimal'])
    for row in convergence.rows:
        writer.writerow([row.c, render_ratio(row.rho), row.rho_decimal, row.gap_decimal])
    click.echo(buffer.getvalue(), nl=False)
    if not convergence.strictly_decreasing:
        ctx.exit(EXIT_FAILURE)


def main():
    cli(prog_name="udcodes")


if __name__ == "__main__":
    main()
