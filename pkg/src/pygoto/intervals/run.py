# Copyright (C) 2024 - 2025 The pygoto-intervals developers
# SPDX-License-Identifier: MIT
#
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""Command line interface of pygoto-intervals."""

import json
import sys
import typing

import click

from pygoto.intervals import LOG
from pygoto.intervals._version import __version__
from pygoto.intervals.absint import DEFAULT_ITERATION_CAP, StorageMode
from pygoto.intervals.concrete import DEFAULT_STATE_BUDGET, DEFAULT_STEP_LIMIT, Counterexample
from pygoto.intervals.domains.config import DomainConfig, DomainKind
from pygoto.intervals.errors import GotoSyntaxError
from pygoto.intervals.examples import list_examples, load_example
from pygoto.intervals.flags import get_flag_names, parse_flag_string
from pygoto.intervals.ir import parse_file
from pygoto.intervals.pipeline import (
    Emit,
    ExitCode,
    Oracle,
    RunConfig,
    gate_program,
    run_pipeline,
    sweep,
)
from pygoto.intervals.transform import InstrumentMode

try:
    from tqdm import tqdm

    _HAS_TQDM = True
except ModuleNotFoundError:  # pragma: no cover
    _HAS_TQDM = False

DRY_RUN = False
"""Dry run constant."""

_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def _configure_logging(log_level: str, log_file: typing.Optional[str]):
    LOG.setLevel(log_level)
    if log_file:
        LOG.log_to_file(log_file, level=log_level)


def _domain_config(
    domain: str,
    arithmetic: bool,
    bitwise: bool,
    widening: bool,
    analysis_flags: typing.Optional[str],
) -> DomainConfig:
    if analysis_flags:
        return parse_flag_string(analysis_flags)
    return DomainConfig(domain, arithmetic, bitwise, widening)


def _cli_impl(
    input_path: str,
    domain: str = DomainKind.INTEGER.value,
    arithmetic: bool = True,
    bitwise: bool = True,
    widening: bool = False,
    analysis_flags: str = None,
    storage: str = StorageMode.SHARED_DOMAIN_COW.value,
    instrument: str = InstrumentMode.NONE.value,
    optimize: bool = False,
    emit: typing.Sequence[str] = (Emit.ANNOTATED.value,),
    oracle: str = Oracle.NONE.value,
    width_cap: int = 8,
    step_limit: int = DEFAULT_STEP_LIMIT,
    iteration_cap: int = DEFAULT_ITERATION_CAP,
    state_budget: int = DEFAULT_STATE_BUDGET,
    workers: int = 1,
    timings: bool = False,
):
    config = RunConfig(
        input_path,
        domain=_domain_config(domain, arithmetic, bitwise, widening, analysis_flags),
        storage=storage,
        instrument=instrument,
        optimize=optimize,
        emit=tuple(emit) or (Emit.ANNOTATED,),
        oracle=oracle,
        width_cap=width_cap,
        step_limit=step_limit,
        iteration_cap=iteration_cap,
        state_budget=state_budget,
        workers=workers,
        timings=timings,
    )
    if DRY_RUN:
        return config

    result = run_pipeline(config)
    if result.error:
        click.echo(f"Error: {result.error}", err=True)
    for artifact in result.artifacts.values():
        click.echo(artifact, nl=False)
    if isinstance(result.check, Counterexample):
        values = ", ".join(f"{name}={value}" for name, value in result.check.env.items())
        click.echo(
            f"Counterexample: {values} fails the assertion at statement {result.check.failed_at}",
            err=True,
        )
    for discrepancy in result.discrepancies:
        click.echo(
            f"Oracle discrepancy: assertion {discrepancy.index} is "
            f"{discrepancy.verdict.value} but {discrepancy.reason}",
            err=True,
        )
    return result.exit_code


def _sweep_impl(input_path: str, iteration_cap: int = DEFAULT_ITERATION_CAP):
    try:
        program = parse_file(input_path)
    except (GotoSyntaxError, OSError) as error:
        click.echo(f"Error: {error}", err=True)
        return ExitCode.INVALID_PROGRAM
    rows = sweep(program, iteration_cap=iteration_cap, name=input_path)
    click.echo(json.dumps([row.to_json() for row in rows], indent=2))
    return ExitCode.SUCCESS


def _gate_impl(
    names: typing.Sequence[str] = (),
    width_cap: int = 8,
    iteration_cap: int = DEFAULT_ITERATION_CAP,
    workers: int = 1,
    progress_bar: bool = False,
):
    names = list(names) or list_examples()
    if DRY_RUN:
        return names
    iterator = names
    if progress_bar and _HAS_TQDM:
        iterator = tqdm(names, desc="Gate")
    entries = [
        gate_program(name, load_example(name), width_cap, iteration_cap, workers)
        for name in iterator
    ]
    click.echo(json.dumps([entry.to_json() for entry in entries], indent=2))
    if any(entry.discrepancies for entry in entries):
        return ExitCode.ORACLE_DISCREPANCY
    return ExitCode.SUCCESS


def _logging_options(func):
    func = click.option(
        "--log-file", default=None, help="Also write log records to this file."
    )(func)
    func = click.option(
        "--log-level",
        type=click.Choice(_LOG_LEVELS, case_sensitive=False),
        default="ERROR",
        show_default=True,
        help="Level of the records written to the standard error.",
    )(func)
    return func


@click.group()
@click.help_option("--help", "-h")
@click.version_option(__version__, prog_name="pygoto-intervals")
def cli():
    """Interval analysis of GOTO programs.

    USAGE:

    The following example analyzes a shipped program and prints it with the
    interval of every variable at each statement:

        $ pygoto-intervals run counter_loop.goto --emit annotated

    Exit codes: 0 success, 1 invalid program, 2 analysis budget exhausted,
    3 oracle discrepancy, 4 refuted assertion or counterexample.
    """


@cli.command("run")
@click.help_option("--help", "-h")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--domain",
    type=click.Choice([kind.value for kind in DomainKind]),
    default=DomainKind.INTEGER.value,
    show_default=True,
    help="Interval domain.",
)
@click.option(
    "--arithmetic/--no-arithmetic", default=True, show_default=True, help="Interpret + - * /."
)
@click.option(
    "--bitwise/--no-bitwise",
    default=True,
    show_default=True,
    help="Interpret shifts, & | ^ ~ and casts.",
)
@click.option(
    "--widening/--no-widening", default=False, show_default=True, help="Widen growing states."
)
@click.option(
    "--analysis-flags",
    type=str,
    default=None,
    help=f"Precision flags as a semicolon delimited list, overriding the options above.\
 Options: {get_flag_names()}",
)
@click.option(
    "--storage",
    type=click.Choice([mode.value for mode in StorageMode]),
    default=StorageMode.SHARED_DOMAIN_COW.value,
    show_default=True,
    help="Representation of the analysis states.",
)
@click.option(
    "--instrument",
    type=click.Choice([mode.value for mode in InstrumentMode]),
    default=InstrumentMode.NONE.value,
    show_default=True,
    help="Insert assumptions with the computed intervals.",
)
@click.option(
    "--optimize", is_flag=True, default=False, help="Fold singletons and remove dead code."
)
@click.option(
    "--emit",
    type=click.Choice([target.value for target in Emit]),
    multiple=True,
    help="Artifact to print, repeatable. The default is annotated.",
)
@click.option(
    "--oracle",
    type=click.Choice([oracle.value for oracle in Oracle]),
    default=Oracle.NONE.value,
    show_default=True,
    help="Cross-check the verdicts by running every initial state.",
)
@click.option("--width-cap", type=int, default=8, show_default=True, help="Oracle width cap.")
@click.option(
    "--step-limit",
    type=int,
    default=DEFAULT_STEP_LIMIT,
    show_default=True,
    help="Statements per oracle run.",
)
@click.option(
    "--iteration-cap",
    type=int,
    default=DEFAULT_ITERATION_CAP,
    show_default=True,
    help="Work-list pops of the analysis.",
)
@click.option(
    "--state-budget",
    type=int,
    default=DEFAULT_STATE_BUDGET,
    show_default=True,
    help="Initial states the oracle may enumerate.",
)
@click.option("--workers", type=int, default=1, show_default=True, help="Oracle threads.")
@click.option("--timings", is_flag=True, default=False, help="Report wall times in the JSON.")
@_logging_options
def run_command(
    input_path: str,
    domain: str,
    arithmetic: bool,
    bitwise: bool,
    widening: bool,
    analysis_flags: str,
    storage: str,
    instrument: str,
    optimize: bool,
    emit: typing.Tuple[str, ...],
    oracle: str,
    width_cap: int,
    step_limit: int,
    iteration_cap: int,
    state_budget: int,
    workers: int,
    timings: bool,
    log_level: str,
    log_file: str,
):
    """Analyze one GOTO program.

    USAGE:

        $ pygoto-intervals run diamond.goto --optimize --emit optimized
    """
    _configure_logging(log_level, log_file)
    try:
        code = _cli_impl(
            input_path,
            domain,
            arithmetic,
            bitwise,
            widening,
            analysis_flags,
            storage,
            instrument,
            optimize,
            emit,
            oracle,
            width_cap,
            step_limit,
            iteration_cap,
            state_budget,
            workers,
            timings,
        )
    except ValueError as error:
        raise click.BadParameter(str(error)) from None
    sys.exit(int(code))


@cli.command("sweep")
@click.help_option("--help", "-h")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--iteration-cap",
    type=int,
    default=DEFAULT_ITERATION_CAP,
    show_default=True,
    help="Work-list pops per configuration.",
)
@_logging_options
def sweep_command(input_path: str, iteration_cap: int, log_level: str, log_file: str):
    """Compare the verdicts of all 16 precision configurations."""
    _configure_logging(log_level, log_file)
    sys.exit(int(_sweep_impl(input_path, iteration_cap)))


@cli.command("gate")
@click.help_option("--help", "-h")
@click.argument("names", nargs=-1)
@click.option("--width-cap", type=int, default=8, show_default=True, help="Oracle width cap.")
@click.option(
    "--iteration-cap",
    type=int,
    default=DEFAULT_ITERATION_CAP,
    show_default=True,
    help="Work-list pops per configuration.",
)
@click.option("--workers", type=int, default=1, show_default=True, help="Oracle threads.")
@click.option("--progress-bar", is_flag=True, default=False, help="Show a progress bar.")
@_logging_options
def gate_command(
    names: typing.Tuple[str, ...],
    width_cap: int,
    iteration_cap: int,
    workers: int,
    progress_bar: bool,
    log_level: str,
    log_file: str,
):
    """Cross-check every shipped program with the exhaustive oracle.

    NAMES restricts the check to some shipped programs. Exits with 3 when a
    verdict is contradicted.
    """
    _configure_logging(log_level, log_file)
    sys.exit(int(_gate_impl(names, width_cap, iteration_cap, workers, progress_bar)))
