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

"""Analysis pipeline behind the command line.

A run parses one program, computes its interval analysis, optionally
optimizes and instruments it, classifies its assertions and, on request,
cross-checks the verdicts with the exhaustive oracle.
"""

from dataclasses import dataclass, field
import enum
import json
import os
import time
import typing

from pygoto.intervals import LOG as logger
from pygoto.intervals._version import REPORT_SCHEMA_VERSION
from pygoto.intervals.absint import (
    DEFAULT_ITERATION_CAP,
    DomainMap,
    StorageMode,
    compute_abs,
    measure_storage,
)
from pygoto.intervals.concrete import (
    DEFAULT_STATE_BUDGET,
    DEFAULT_STEP_LIMIT,
    CheckResult,
    Counterexample,
    exhaustive_check,
)
from pygoto.intervals.domains.config import DomainConfig, all_configs
from pygoto.intervals.errors import (
    AnalysisCapExceeded,
    EnumerationBudgetExceeded,
    GotoSyntaxError,
    IrreducibleLoopError,
    WidthCapExceeded,
)
from pygoto.intervals.ir import Program, emit_program, parse_program
from pygoto.intervals.misc import check_positive_int, check_valid_width_cap
from pygoto.intervals.transform import (
    AssertVerdict,
    Discrepancy,
    InstrumentMode,
    Verdict,
    assertion_report,
    cross_check,
    instrument,
    remove_dead_code,
    singleton_propagate,
    tally,
)


class Emit(str, enum.Enum):
    """Artifacts a run can print."""

    ANNOTATED = "annotated"
    OPTIMIZED = "optimized"
    REPORT_JSON = "report-json"


class Oracle(str, enum.Enum):
    NONE = "none"
    EXHAUSTIVE = "exhaustive"


class ExitCode(enum.IntEnum):
    """Exit statuses of the command line."""

    SUCCESS = 0
    INVALID_PROGRAM = 1
    ANALYSIS_CAP = 2
    ORACLE_DISCREPANCY = 3
    REFUTED = 4


@dataclass(frozen=True)
class RunConfig:
    """Settings of one run.

    Parameters
    ----------
    input_path : str
        GOTO source file.
    domain : DomainConfig, optional
        Analysis precision. The default is the integer domain with arithmetic
        and bitwise operators interpreted and no widening.
    storage : StorageMode, optional
        Representation of the analysis states. The default is
        ``shared_domain_cow``.
    instrument : InstrumentMode, optional
        Instrumentation mode. The default is ``none``.
    optimize : bool, optional
        Whether to fold singleton expressions and remove dead code. The
        default is ``False``.
    emit : tuple of Emit, optional
        Artifacts to produce, in order. The default is ``("annotated",)``.
    oracle : Oracle, optional
        ``exhaustive`` cross-checks the verdicts by enumeration. The default
        is ``none``.
    width_cap : int, optional
        Widest type the oracle enumerates. The default is ``8``.
    step_limit : int, optional
        Statement budget of each oracle run. The default is ``10**6``.
    iteration_cap : int, optional
        Work-list pop budget of the analysis. The default is ``10**6``.
    state_budget : int, optional
        Maximum number of environments the oracle enumerates. The default is
        ``2**20``.
    workers : int, optional
        Oracle threads. The default is ``1``.
    timings : bool, optional
        Whether the JSON report includes wall times. The default is ``False``.
    program_name : str, optional
        Name used in logs and reports. The default is the file name without
        its extension.
    """

    input_path: str
    domain: DomainConfig = field(default_factory=DomainConfig)
    storage: StorageMode = StorageMode.SHARED_DOMAIN_COW
    instrument: InstrumentMode = InstrumentMode.NONE
    optimize: bool = False
    emit: typing.Tuple[Emit, ...] = (Emit.ANNOTATED,)
    oracle: Oracle = Oracle.NONE
    width_cap: int = 8
    step_limit: int = DEFAULT_STEP_LIMIT
    iteration_cap: int = DEFAULT_ITERATION_CAP
    state_budget: int = DEFAULT_STATE_BUDGET
    workers: int = 1
    timings: bool = False
    program_name: typing.Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "storage", StorageMode(self.storage))
        object.__setattr__(self, "instrument", InstrumentMode(self.instrument))
        object.__setattr__(self, "oracle", Oracle(self.oracle))
        emit = tuple(dict.fromkeys(Emit(target) for target in self.emit))
        object.__setattr__(self, "emit", emit)
        check_valid_width_cap(self.width_cap)
        check_positive_int(self.step_limit, "step_limit")
        check_positive_int(self.iteration_cap, "iteration_cap")
        check_positive_int(self.state_budget, "state_budget")
        check_positive_int(self.workers, "workers")
        if self.program_name is None:
            name = os.path.splitext(os.path.basename(self.input_path))[0]
            object.__setattr__(self, "program_name", name)

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "storage": self.storage.value,
            "instrument": self.instrument.value,
            "optimize": self.optimize,
            "oracle": self.oracle.value,
            "width_cap": self.width_cap,
            "step_limit": self.step_limit,
            "iteration_cap": self.iteration_cap,
        }


@dataclass
class RunStatistics:
    """Figures of a completed run."""

    preprocessing_time: float = 0.0
    analysis_time: float = 0.0
    pops: int = 0
    peak_tracked: int = 0
    interval_objects: typing.Dict[str, int] = field(
        default_factory=lambda: {mode.value: 0 for mode in StorageMode}
    )
    folded: int = 0
    killed: int = 0
    instrumented: int = 0
    verdicts: typing.Dict[str, int] = field(
        default_factory=lambda: {verdict.value: 0 for verdict in Verdict}
    )

    def to_json(self, timings: bool = False) -> dict:
        data = {
            "pops": self.pops,
            "peak_tracked": self.peak_tracked,
            "interval_objects": dict(self.interval_objects),
            "folded": self.folded,
            "killed": self.killed,
            "instrumented": self.instrumented,
            "verdicts": dict(self.verdicts),
        }
        if timings:
            data["preprocessing_time"] = self.preprocessing_time
            data["analysis_time"] = self.analysis_time
        return data


@dataclass
class RunResult:
    """Everything a run produced."""

    config: RunConfig
    exit_code: ExitCode = ExitCode.SUCCESS
    error: typing.Optional[str] = None
    program: typing.Optional[Program] = None
    domain_map: typing.Optional[DomainMap] = None
    transformed: typing.Optional[Program] = None
    report: typing.List[AssertVerdict] = field(default_factory=list)
    check: typing.Optional[CheckResult] = None
    oracle_skipped: typing.Optional[str] = None
    discrepancies: typing.List[Discrepancy] = field(default_factory=list)
    preprocessing_time: float = 0.0
    analysis_time: float = 0.0
    folded: int = 0
    killed: int = 0
    instrumented: int = 0
    statistics: RunStatistics = field(default_factory=RunStatistics)
    artifacts: typing.Dict[Emit, str] = field(default_factory=dict)


def _changed(before: Program, after: Program) -> typing.List[int]:
    return [index for index in before.indices() if before[index] != after[index]]


def stats(result: RunResult) -> RunStatistics:
    """Collect the statistics of a run.

    Runs that stopped before the analysis finished report zeros for the
    missing parts.
    """
    statistics = RunStatistics(
        preprocessing_time=result.preprocessing_time,
        analysis_time=result.analysis_time,
        folded=result.folded,
        killed=result.killed,
        instrumented=result.instrumented,
        verdicts=tally(result.report),
    )
    if result.domain_map is not None:
        statistics.pops = result.domain_map.stats.pops
        statistics.peak_tracked = result.domain_map.stats.peak_tracked
        statistics.interval_objects = measure_storage(result.domain_map)
    return statistics


def _transform(result: RunResult, config: RunConfig):
    program = result.program
    domain_map = result.domain_map
    transformed = program
    if config.optimize:
        propagated = singleton_propagate(program, domain_map)
        transformed = remove_dead_code(propagated, domain_map)
        killed = _changed(propagated, transformed)
        folded = [index for index in _changed(program, propagated) if index not in killed]
        result.folded = len(folded)
        result.killed = len(killed)
    if config.instrument is not InstrumentMode.NONE:
        if config.optimize:
            domain_map = compute_abs(
                transformed,
                config.domain,
                config.storage,
                iteration_cap=config.iteration_cap,
                name=config.program_name,
            )
        instrumented = instrument(transformed, domain_map, config.instrument)
        result.instrumented = len(instrumented) - len(transformed)
        transformed = instrumented
    result.transformed = transformed


def _run_oracle(result: RunResult, config: RunConfig):
    try:
        result.check = exhaustive_check(
            result.program,
            config.width_cap,
            config.step_limit,
            budget=config.state_budget,
            workers=config.workers,
            collect_outcomes=True,
        )
    except (WidthCapExceeded, EnumerationBudgetExceeded) as error:
        logger.warning(f"Exhaustive oracle skipped for {config.program_name}: {error}")
        result.oracle_skipped = str(error)
        return
    result.discrepancies = cross_check(result.report, result.check)


def _exit_code(result: RunResult) -> ExitCode:
    if result.discrepancies:
        return ExitCode.ORACLE_DISCREPANCY
    refuted = any(entry.verdict is Verdict.REFUTED for entry in result.report)
    if refuted or isinstance(result.check, Counterexample):
        return ExitCode.REFUTED
    return ExitCode.SUCCESS


def report_json(result: RunResult) -> dict:
    """Return the JSON report document of a run."""
    config = result.config
    oracle = None
    if config.oracle is Oracle.EXHAUSTIVE:
        if result.check is not None:
            oracle = result.check.to_json()
            oracle["discrepancies"] = [entry.to_json() for entry in result.discrepancies]
        else:
            oracle = {"verdict": "skipped", "reason": result.oracle_skipped}
    return {
        "schema": REPORT_SCHEMA_VERSION,
        "program": config.program_name,
        "config": config.to_json(),
        "domain_map": result.domain_map.to_json() if result.domain_map is not None else [],
        "assertions": [entry.to_json() for entry in result.report],
        "statistics": result.statistics.to_json(config.timings),
        "oracle": oracle,
        "exit_code": int(result.exit_code),
    }


def _artifacts(result: RunResult) -> typing.Dict[Emit, str]:
    artifacts = {}
    for target in result.config.emit:
        if target is Emit.ANNOTATED:
            domain_map = result.domain_map
            artifacts[target] = emit_program(
                result.program, annotations=lambda index: domain_map.entry(index).annotation()
            )
        elif target is Emit.OPTIMIZED:
            artifacts[target] = emit_program(result.transformed)
        else:
            artifacts[target] = json.dumps(report_json(result), indent=2) + "\n"
    return artifacts


def run_pipeline(config: RunConfig, text: typing.Optional[str] = None) -> RunResult:
    """Run the analysis pipeline on one program.

    Parameters
    ----------
    config : RunConfig
        Run settings.
    text : str, optional
        Program source. The default is to read ``config.input_path``.

    Returns
    -------
    RunResult
        Produced artifacts and the exit code. Parse errors, irreducible loops
        met by loop instrumentation and exhausted analysis budgets are
        reported through ``exit_code`` and ``error``.
    """
    result = RunResult(config)
    log = logger.program_adapter(config.program_name, suffix="pipeline")
    started = time.perf_counter()
    try:
        if text is None:
            with open(config.input_path, encoding="utf-8") as stream:
                text = stream.read()
        result.program = parse_program(text)
    except (GotoSyntaxError, OSError) as error:
        log.error(f"Invalid program: {error}")
        result.exit_code = ExitCode.INVALID_PROGRAM
        result.error = str(error)
        return result
    result.preprocessing_time = time.perf_counter() - started
    log.info(f"Parsed {len(result.program)} statements.")

    started = time.perf_counter()
    try:
        result.domain_map = compute_abs(
            result.program,
            config.domain,
            config.storage,
            iteration_cap=config.iteration_cap,
            name=config.program_name,
        )
        result.report = assertion_report(result.program, result.domain_map, config.domain)
        _transform(result, config)
    except AnalysisCapExceeded as error:
        log.error(f"Analysis stopped: {error}")
        result.exit_code = ExitCode.ANALYSIS_CAP
        result.error = str(error)
        result.domain_map = None
        return result
    except IrreducibleLoopError as error:
        log.error(f"Invalid program: {error}")
        result.exit_code = ExitCode.INVALID_PROGRAM
        result.error = str(error)
        return result
    result.analysis_time = time.perf_counter() - started
    log.info(f"Analysis finished with verdicts {tally(result.report)}.")

    if config.oracle is Oracle.EXHAUSTIVE:
        _run_oracle(result, config)
    result.exit_code = _exit_code(result)
    result.statistics = stats(result)
    result.artifacts = _artifacts(result)
    return result


@dataclass(frozen=True)
class SweepRow:
    """Analysis figures of one precision configuration."""

    config: DomainConfig
    verdicts: typing.Optional[typing.Dict[str, int]]
    pops: typing.Optional[int]

    def to_json(self) -> dict:
        return {
            "config": self.config.label(),
            "verdicts": self.verdicts,
            "pops": self.pops,
            "cap_exceeded": self.verdicts is None,
        }


def sweep(
    program: Program,
    iteration_cap: int = DEFAULT_ITERATION_CAP,
    name: typing.Optional[str] = None,
) -> typing.List[SweepRow]:
    """Analyze a program under every precision configuration.

    Configurations that exhaust ``iteration_cap`` get ``None`` figures.
    """
    rows = []
    for config in all_configs():
        try:
            domain_map = compute_abs(program, config, iteration_cap=iteration_cap, name=name)
        except AnalysisCapExceeded:
            rows.append(SweepRow(config, None, None))
            continue
        report = assertion_report(program, domain_map, config)
        rows.append(SweepRow(config, tally(report), domain_map.stats.pops))
    return rows


@dataclass
class GateEntry:
    """Oracle cross-check of one corpus program."""

    name: str
    check: typing.Optional[CheckResult] = None
    skipped: typing.Optional[str] = None
    discrepancies: typing.Dict[str, typing.List[Discrepancy]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "program": self.name,
            "oracle": self.check.to_json()["verdict"] if self.check is not None else "skipped",
            "reason": self.skipped,
            "discrepancies": {
                label: [entry.to_json() for entry in entries]
                for label, entries in self.discrepancies.items()
            },
        }


def gate_program(
    name: str,
    program: Program,
    width_cap: int = 8,
    iteration_cap: int = DEFAULT_ITERATION_CAP,
    workers: int = 1,
) -> GateEntry:
    """Cross-check the verdicts of every precision configuration with the oracle."""
    entry = GateEntry(name)
    try:
        entry.check = exhaustive_check(
            program, width_cap, workers=workers, collect_outcomes=True
        )
    except (WidthCapExceeded, EnumerationBudgetExceeded) as error:
        logger.warning(f"Exhaustive oracle skipped for {name}: {error}")
        entry.skipped = str(error)
        return entry
    for config in all_configs():
        try:
            domain_map = compute_abs(program, config, iteration_cap=iteration_cap, name=name)
        except AnalysisCapExceeded:
            continue
        found = cross_check(assertion_report(program, domain_map, config), entry.check)
        if found:
            entry.discrepancies[config.label()] = found
    return entry
