"""
Command line for odd-odd continued fractions

    python -m oocf.oocf_cli expand --input 1/3 --all
    python -m oocf.oocf_cli verify thm1 --input "(-1+1*sqrt(2))/1" --qmax 10000

Exit codes: 0 success or pass, 1 bad input, 2 verification failure.
"""

import functools
import logging
import sys
from fractions import Fraction

import click
from prefect.logging import get_logger

from oocf.oocf_verify import SUITES, run_suite
from utilities.util_approx import best_one_rationals
from utilities.util_convergents import convergent_table
from utilities.util_data import convergent_frame, dumps, payload, render_frame
from utilities.util_errors import OocfError
from utilities.util_ford import render_ford_svg
from utilities.util_maps import Interval, measure_check
from utilities.util_oocf import all_expansions, expand
from utilities.util_parse import parse_digits, parse_number
from utilities.util_rcf import RcfExpansion, RcfTerminator, rcf_to_oocf
from utilities.util_settings import get_settings

EXIT_INPUT = 1
EXIT_FAILED = 2

FORMATS = click.Choice(["json", "tsv", "text"])


def guarded(fn):
    """Report package errors on stderr and exit with code 1."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except OocfError as err:
            click.echo(f"error: {err}", err=True)
            click.get_current_context().exit(EXIT_INPUT)

    return wrapper


def _verdict(passed):
    if not passed:
        click.get_current_context().exit(EXIT_FAILED)


@click.group()
@click.option("--verbose", is_flag=True, help="Log library decisions at DEBUG level")
def cli(verbose):
    """Expansions, convergents and verification suites for odd-odd continued fractions."""
    if verbose:
        get_logger("utilities").setLevel(logging.DEBUG)


@cli.command(name="expand")
@click.option("--input", "text", required=True, help='e.g. 2/7 or "(-1+1*sqrt(2))/1"')
@click.option("--max-digits", type=int, default=None, help="Truncate after this many digits")
@click.option("--all", "both", is_flag=True, help="Both expansions of a rational")
@guarded
def cmd_expand(text, max_digits, both):
    """Print the OOCF expansion of a number as JSON."""
    x = parse_number(text)
    if not both:
        click.echo(dumps(payload(**expand(x, max_digits=max_digits).to_dict())))
        return
    if isinstance(x, Fraction) and 0 < x < 1:
        expansions = all_expansions(x)
    else:
        expansions = (expand(x, max_digits=max_digits),)
    click.echo(dumps(payload(expansions=[e.to_dict() for e in expansions])))


@cli.command(name="convergents")
@click.option("--input", "text", required=True)
@click.option("-n", "n", type=int, default=10, show_default=True, help="Number of rows")
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
@guarded
def cmd_convergents(text, n, fmt):
    """Principal, sub and pseudo convergents of the first n digits."""
    x = parse_number(text)
    digits = expand(x, max_digits=n).unrolled(n)
    rows = convergent_table(digits)[1:]
    if fmt == "json":
        click.echo(dumps(payload(input=str(x), rows=[t.to_dict() for t in rows])))
    elif rows:
        click.echo(render_frame(convergent_frame(rows), fmt))


@cli.command(name="best")
@click.option("--input", "text", required=True)
@click.option("--qmax", type=int, required=True, help="Largest denominator")
@click.option("--include-seed", is_flag=True, help="Keep 1/1 at the head of the list")
@guarded
def cmd_best(text, qmax, include_seed):
    """Best 1-rational approximations by the odd-denominator scan."""
    x = parse_number(text)
    best = best_one_rationals(
        x, qmax, include_seed=include_seed, partitions=get_settings().threads
    )
    click.echo(dumps(payload(input=str(x), qmax=qmax, best=best)))


@cli.command(name="convert")
@click.option("--from", "source", type=click.Choice(["rcf"]), default="rcf", show_default=True)
@click.option("--to", "target", type=click.Choice(["oocf"]), default="oocf", show_default=True)
@click.option("--digits", "text", required=True, help='RCF digits, e.g. "2,3,1"')
@click.option("--truncated", is_flag=True, help="More RCF digits follow the ones given")
@click.option("--max-digits", type=int, default=None)
@guarded
def cmd_convert(source, target, text, truncated, max_digits):
    """Stream RCF digits through the OOCF transducer."""
    terminator = RcfTerminator.TRUNCATED if truncated else RcfTerminator.FINITE
    e = RcfExpansion(tuple(parse_digits(text)), terminator)
    click.echo(dumps(payload(**rcf_to_oocf(e, max_digits=max_digits).to_dict())))


@cli.command(name="verify")
@click.argument("suite", type=click.Choice(list(SUITES)))
@click.option("--input", "inputs", multiple=True, help="Repeatable; defaults to the fixture set")
@click.option("--qmax", type=int, default=None)
@click.option("-n", "n", type=int, default=None, help="Digits, levels or samples, per suite")
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
@guarded
def cmd_verify(suite, inputs, qmax, n, fmt):
    """Run a verification suite; exit 2 when any row fails."""
    for text in inputs:
        parse_number(text)
    report = run_suite(suite, inputs, qmax=qmax, n=n)
    if fmt == "json":
        click.echo(dumps(report.to_dict()))
    else:
        click.echo(render_frame(report.rows, fmt))
    _verdict(report.passed)


@cli.command(name="measure")
@click.option("--lo", required=True)
@click.option("--hi", required=True)
@click.option("--K", "k_max", type=int, default=None, help="Branch cutoff")
@click.option("--tol", type=float, default=None)
@guarded
def cmd_measure(lo, hi, k_max, tol):
    """Compare the invariant mass of [lo, hi] with that of its preimages."""
    report = measure_check(Interval(parse_number(lo), parse_number(hi)), k_max, tol)
    click.echo(dumps(payload(**report.to_dict())))
    _verdict(report.passed)


@cli.command(name="ford-svg")
@click.option("--input", "text", required=True)
@click.option("-n", "n", type=int, default=6, show_default=True)
@click.option("--den-max", type=int, default=None, help="Largest background denominator")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default="-")
@guarded
def cmd_ford_svg(text, n, den_max, output):
    """Ford circles colored by parity with the convergents of x outlined."""
    x = parse_number(text)
    svg = render_ford_svg(x, n=n, den_max=den_max or get_settings().den_max)
    with click.open_file(output, "w", encoding="utf-8") as fh:
        fh.write(svg)
        if output == "-":
            fh.write("\n")


def main():
    """Console entry point; click usage errors count as bad input."""
    try:
        code = cli.main(standalone_mode=False)
    except click.UsageError as err:
        err.show()
        sys.exit(EXIT_INPUT)
    except click.Abort:
        sys.exit(EXIT_INPUT)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
