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

"""Program transformations driven by interval analysis results.

The passes take a program and the :class:`DomainMap` computed for it and
return a new program. Folding and dead-code removal keep statement indices,
instrumentation inserts new statements.
"""

from dataclasses import dataclass
import enum
import typing

from pygoto.intervals import LOG as logger
from pygoto.intervals.absint.env import AbstractEnv
from pygoto.intervals.absint.interpreter import DomainMap
from pygoto.intervals.concrete import AssertOutcome, CheckResult, Counterexample
from pygoto.intervals.domains.boolean import BoolInterval
from pygoto.intervals.domains.config import DomainConfig
from pygoto.intervals.domains.evaluate import Interval, eval_abs_cond, eval_abs_expr, may_fault
from pygoto.intervals.errors import IrreducibleLoopError
from pygoto.intervals.ir.cfg import assigned_variables, detect_loops, is_reducible, loop_exits
from pygoto.intervals.ir.types import (
    BOOL_TYPE,
    Assert,
    Assignment,
    Assumption,
    BinaryOperator,
    BinOp,
    Const,
    IfThenGoto,
    Label,
    Program,
    Skip,
    Stmt,
    Var,
    stmt_expr,
    variables,
    with_expr,
)


class InstrumentMode(str, enum.Enum):
    """Where instrumentation inserts interval assumptions."""

    NONE = "none"
    LOOP = "loop"
    GUARD_FULL = "guard_full"
    GUARD_LOCAL = "guard_local"
    ALL_FULL = "all_full"
    ALL_LOCAL = "all_local"


class Verdict(str, enum.Enum):
    PROVEN = "proven"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class AssertVerdict:
    """Outcome of the analysis for one assertion.

    Parameters
    ----------
    index : int
        Statement index of the assertion.
    verdict : Verdict
        ``proven`` when the assertion holds in every state reaching it,
        ``refuted`` when it fails in every such state and some state may
        reach it, ``unknown`` otherwise.
    witness : dict
        Entry intervals of the variables the assertion reads.
    """

    index: int
    verdict: Verdict
    witness: typing.Mapping[str, Interval]

    def to_json(self) -> dict:
        return {
            "stmt": self.index,
            "verdict": self.verdict.value,
            "witness": {name: interval.to_json() for name, interval in self.witness.items()},
        }


@dataclass(frozen=True)
class Discrepancy:
    """Verdict contradicted by the exhaustive oracle."""

    index: int
    verdict: Verdict
    reason: str

    def to_json(self) -> dict:
        return {"stmt": self.index, "verdict": self.verdict.value, "reason": self.reason}


def _folded(stmt: Stmt, value: int, symbols) -> Stmt:
    if isinstance(stmt, Assignment):
        target_type = symbols[stmt.target]
        return with_expr(stmt, Const(target_type.wrap(value), target_type))
    return with_expr(stmt, Const(int(value != 0), BOOL_TYPE))


def singleton_propagate(program: Program, domain_map: DomainMap) -> Program:
    """Replace every expression with a single possible value by that constant.

    Expressions that may fault at their statement's entry state are kept so
    that faulting runs still fault. Unreachable statements are left to
    :func:`remove_dead_code`.

    Examples
    --------
    With ``a`` in ``[4, 6]`` at its entry, ``assert 6 <= t`` after
    ``t := a + 2`` folds to ``assert 1``.
    """
    config = domain_map.config
    stmts = []
    folded = 0
    for index in program.indices():
        stmt = program[index]
        expr = stmt_expr(stmt)
        env = domain_map.entry(index)
        if expr is None or isinstance(expr, Const) or env.is_bottom():
            stmts.append(stmt)
            continue
        if may_fault(expr, env, config):
            stmts.append(stmt)
            continue
        value = eval_abs_expr(expr, env, config).singleton()
        if value is None:
            stmts.append(stmt)
            continue
        stmts.append(_folded(stmt, value, program.symbols))
        folded += 1
    logger.debug(f"Folded {folded} expressions.")
    return program.replace(stmts)


def remove_dead_code(program: Program, domain_map: DomainMap) -> Program:
    """Turn every statement whose entry state is Bottom into ``skip``.

    Labels are kept so that jumps still resolve.
    """
    stmts = []
    for index in program.indices():
        stmt = program[index]
        if isinstance(stmt, Label) or not domain_map.entry(index).is_bottom():
            stmts.append(stmt)
        else:
            stmts.append(Skip())
    return program.replace(stmts)


def _bounds(env: AbstractEnv, names: typing.Iterable[str]) -> typing.List[Stmt]:
    assumes = []
    for name in names:
        interval = env.get(name)
        ranges = interval.value_ranges()
        if interval.is_top() or len(ranges) != 1:
            continue
        mach_type = env.symbols[name]
        low, high = ranges[0]
        if low > mach_type.min:
            assumes.append(Assumption(BinOp(BinaryOperator.LE, Const(low, mach_type), Var(name))))
        if high < mach_type.max:
            assumes.append(Assumption(BinOp(BinaryOperator.LE, Var(name), Const(high, mach_type))))
    return assumes


def _statement_variables(stmt: Stmt) -> typing.List[str]:
    expr = stmt_expr(stmt)
    names = list(variables(expr)) if expr is not None else []
    if isinstance(stmt, Assignment) and stmt.target not in names:
        names.append(stmt.target)
    return names


def _declared_order(program: Program, names: typing.Iterable[str]) -> typing.List[str]:
    names = set(names)
    return [name for name in program.symbols if name in names]


def _loop_points(program: Program, domain_map: DomainMap) -> typing.Dict[int, typing.List[str]]:
    if not is_reducible(program):
        raise IrreducibleLoopError("Loop instrumentation needs a reducible control-flow graph.")
    points: typing.Dict[int, typing.List[str]] = {}
    for loop in detect_loops(program):
        names = assigned_variables(program, loop.body)
        anchors = [loop.head] + [target for _, target in loop_exits(program, loop)]
        for anchor in anchors:
            merged = points.setdefault(anchor, [])
            merged.extend(name for name in names if name not in merged)
    return {
        anchor: _declared_order(program, names) for anchor, names in points.items() if names
    }


def _statement_points(
    program: Program, mode: InstrumentMode
) -> typing.Dict[int, typing.List[str]]:
    guards = (Assumption, Assert, IfThenGoto)
    full = mode in (InstrumentMode.GUARD_FULL, InstrumentMode.ALL_FULL)
    every = mode in (InstrumentMode.ALL_FULL, InstrumentMode.ALL_LOCAL)
    points = {}
    for index in program.indices():
        stmt = program[index]
        if isinstance(stmt, Label) or not (every or isinstance(stmt, guards)):
            continue
        points[index] = list(program.symbols) if full else _statement_variables(stmt)
    return points


def instrument(
    program: Program, domain_map: DomainMap, mode: typing.Union[InstrumentMode, str]
) -> Program:
    """Insert assumptions stating the entry intervals of variables.

    Each bound becomes one ``assume c <= v`` or ``assume v <= c``; bounds at
    the limits of the type are left out, and so are intervals that wrap in
    the value order of their type. Statements whose entry state is Bottom
    get no assumption.

    Parameters
    ----------
    program : Program
        Program the map was computed for.
    domain_map : DomainMap
        Entry states of ``program``.
    mode : InstrumentMode or str
        ``none`` returns the program unchanged. ``loop`` instruments loop
        heads and the targets of loop exits with the variables assigned in
        the loop. ``guard_full`` and ``guard_local`` instrument every
        ``assume``, ``assert`` and ``if``; ``all_full`` and ``all_local``
        every statement. ``full`` modes cover all declared variables,
        ``local`` modes the variables of the statement.

    Returns
    -------
    Program
        Instrumented program. Assumptions anchored at a label are placed
        right after it, others right before their statement.

    Raises
    ------
    IrreducibleLoopError
        In ``loop`` mode, when a loop head does not dominate its back edge.
    """
    mode = InstrumentMode(mode)
    if mode is InstrumentMode.NONE:
        return program
    if mode is InstrumentMode.LOOP:
        points = _loop_points(program, domain_map)
    else:
        points = _statement_points(program, mode)

    stmts = []
    inserted = 0
    for index in program.indices():
        stmt = program[index]
        assumes = []
        if index in points:
            env = domain_map.entry(index)
            if not env.is_bottom():
                assumes = _bounds(env, points[index])
        inserted += len(assumes)
        if isinstance(stmt, Label):
            stmts.append(stmt)
            stmts.extend(assumes)
        else:
            stmts.extend(assumes)
            stmts.append(stmt)
    logger.debug(f"Inserted {inserted} assumptions in {mode.value} mode.")
    return program.replace(stmts)


def assertion_report(
    program: Program, domain_map: DomainMap, config: typing.Optional[DomainConfig] = None
) -> typing.List[AssertVerdict]:
    """Classify every assertion of a program.

    An assertion no state reaches is ``proven`` with an empty witness.
    """
    config = config or domain_map.config
    report = []
    for index in program.indices():
        stmt = program[index]
        if not isinstance(stmt, Assert):
            continue
        env = domain_map.entry(index)
        if env.is_bottom():
            report.append(AssertVerdict(index, Verdict.PROVEN, {}))
            continue
        truth = eval_abs_cond(stmt.expr, env, config)
        if truth is BoolInterval.TRUE:
            verdict = Verdict.PROVEN
        elif truth is BoolInterval.FALSE:
            verdict = Verdict.REFUTED
        else:
            verdict = Verdict.UNKNOWN
        witness = {name: env.get(name) for name in variables(stmt.expr)}
        report.append(AssertVerdict(index, verdict, witness))
    return report


def tally(report: typing.Iterable[AssertVerdict]) -> typing.Dict[str, int]:
    """Count the verdicts of a report."""
    counts = {verdict.value: 0 for verdict in Verdict}
    for entry in report:
        counts[entry.verdict.value] += 1
    return counts


def cross_check(
    report: typing.Iterable[AssertVerdict], result: CheckResult
) -> typing.List[Discrepancy]:
    """List the verdicts the exhaustive oracle contradicts.

    A ``proven`` assertion contradicts the oracle when some run fails it and a
    ``refuted`` one when some run passes it. Without per-assertion outcomes
    only the reported counterexample is checked.
    """
    outcomes = getattr(result, "outcomes", None)
    discrepancies = []
    for entry in report:
        if outcomes is not None:
            outcome = outcomes.get(entry.index, AssertOutcome())
            if entry.verdict is Verdict.PROVEN and outcome.failed:
                discrepancies.append(
                    Discrepancy(entry.index, entry.verdict, f"failed in {outcome.failed} runs")
                )
            elif entry.verdict is Verdict.REFUTED and outcome.passed:
                discrepancies.append(
                    Discrepancy(entry.index, entry.verdict, f"passed in {outcome.passed} runs")
                )
        elif (
            entry.verdict is Verdict.PROVEN
            and isinstance(result, Counterexample)
            and result.failed_at == entry.index
        ):
            discrepancies.append(
                Discrepancy(entry.index, entry.verdict, "failed by the counterexample")
            )
    for discrepancy in discrepancies:
        logger.error(
            f"Assertion {discrepancy.index} is {discrepancy.verdict.value} but "
            f"{discrepancy.reason}."
        )
    return discrepancies
