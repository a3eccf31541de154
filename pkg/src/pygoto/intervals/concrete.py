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

"""Concrete machine-integer semantics and the exhaustive safety oracle.

Values are Python integers kept inside the range of their machine type.
Operands of arithmetic and of ``& | ^`` are converted to the common type of
the operation, the result wraps around modulo ``2**width``. Division truncates
toward zero; division by zero and shifts by an amount outside
``[0, width)`` raise :class:`~pygoto.intervals.errors.EvaluationFault`.

:func:`eval_program` runs a program from one initial environment and returns a
:data:`RunVerdict`. :func:`exhaustive_check` runs it from every initial
environment and decides whether the program is safe.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
import itertools
import math
import typing

from pygoto.intervals import LOG as logger
from pygoto.intervals.errors import (
    EnumerationBudgetExceeded,
    EvaluationFault,
    FaultKind,
    UnboundVariableError,
    WidthCapExceeded,
)
from pygoto.intervals.ir.cfg import live_on_entry
from pygoto.intervals.ir.types import (
    Assert,
    Assignment,
    Assumption,
    BinaryOperator,
    BinOp,
    BitNot,
    Cast,
    Const,
    Expr,
    IfThenGoto,
    MachType,
    Not,
    Program,
    Stmt,
    Var,
    common_type,
)
from pygoto.intervals.misc import check_positive_int, check_valid_width_cap
from pygoto.intervals.pool import EnumerationPool

DEFAULT_STEP_LIMIT = 10**6
"""Maximum number of executed statements per run."""

DEFAULT_STATE_BUDGET = 2**20
"""Maximum number of initial environments :func:`exhaustive_check` enumerates."""


class ConcreteEnv(Mapping):
    """Immutable assignment of a machine integer to every declared variable.

    Parameters
    ----------
    symbols : Mapping
        Symbol table, variable name to :class:`MachType`.
    values : Mapping, optional
        Initial values. Variables left out are ``0``.

    Raises
    ------
    UnboundVariableError
        If ``values`` names an undeclared variable.
    ValueError
        If a value lies outside the range of its variable's type.
    """

    __slots__ = ("_symbols", "_values")

    def __init__(self, symbols: typing.Mapping[str, MachType], values=None):
        values = dict(values or {})
        for name in values:
            if name not in symbols:
                raise UnboundVariableError(name)
        for name, value in values.items():
            if not symbols[name].contains(value):
                raise ValueError(
                    f"Value {value} of '{name}' is out of the range of {symbols[name]}."
                )
        self._symbols = symbols
        self._values = {name: values.get(name, 0) for name in symbols}

    @property
    def symbols(self) -> typing.Mapping[str, MachType]:
        return self._symbols

    def __getitem__(self, name):
        try:
            return self._values[name]
        except KeyError:
            raise UnboundVariableError(name) from None

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __eq__(self, other):
        if isinstance(other, ConcreteEnv):
            return self._values == other._values and dict(self._symbols) == dict(other._symbols)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._values.items())))

    def __repr__(self):
        inner = ", ".join(f"{name}={value}" for name, value in self._values.items())
        return f"ConcreteEnv({inner})"

    def set(self, name: str, value: int) -> "ConcreteEnv":
        """Return a copy binding ``name`` to ``value`` wrapped into the variable's type."""
        if name not in self._symbols:
            raise UnboundVariableError(name)
        values = dict(self._values)
        values[name] = self._symbols[name].wrap(value)
        return ConcreteEnv(self._symbols, values)

    def sort_key(self) -> typing.Tuple[int, ...]:
        """Key ordering environments lexicographically in variable-name order."""
        return tuple(self._values[name] for name in sorted(self._values))

    def to_json(self) -> typing.Dict[str, int]:
        return dict(self._values)


def _term_value(term, values, symbols):
    if isinstance(term, Const):
        return term.value, term.type
    try:
        return values[term.name], symbols[term.name]
    except KeyError:
        raise UnboundVariableError(term.name) from None


def _truncating_div(a: int, b: int) -> int:
    quotient = abs(a) // abs(b)
    return quotient if (a < 0) == (b < 0) else -quotient


def _binary(expr: BinOp, values, symbols) -> int:
    x, left_type = _term_value(expr.left, values, symbols)
    y, right_type = _term_value(expr.right, values, symbols)
    op = expr.op
    if op is BinaryOperator.LAND:
        return int(x != 0 and y != 0)
    if op.is_shift:
        if not 0 <= y < left_type.width:
            raise EvaluationFault(
                FaultKind.SHIFT_OUT_OF_RANGE,
                f"Shift amount {y} is outside [0, {left_type.width}).",
            )
        if op is BinaryOperator.SHL:
            return left_type.wrap(x << y)
        return x >> y
    mach_type = common_type(left_type, right_type)
    a, b = mach_type.wrap(x), mach_type.wrap(y)
    if op is BinaryOperator.LE:
        return int(a <= b)
    if op is BinaryOperator.ADD:
        result = a + b
    elif op is BinaryOperator.SUB:
        result = a - b
    elif op is BinaryOperator.MUL:
        result = a * b
    elif op is BinaryOperator.DIV:
        if b == 0:
            raise EvaluationFault(FaultKind.DIV_BY_ZERO, "Division by zero.")
        result = _truncating_div(a, b)
    elif op is BinaryOperator.AND:
        result = a & b
    elif op is BinaryOperator.OR:
        result = a | b
    else:
        result = a ^ b
    return mach_type.wrap(result)


def _evaluate(expr: Expr, values, symbols) -> int:
    if isinstance(expr, (Var, Const)):
        return _term_value(expr, values, symbols)[0]
    if isinstance(expr, BinOp):
        return _binary(expr, values, symbols)
    value, mach_type = _term_value(expr.operand, values, symbols)
    if isinstance(expr, Not):
        return int(value == 0)
    if isinstance(expr, BitNot):
        return mach_type.wrap(~value)
    if isinstance(expr, Cast):
        return expr.type.wrap(value)
    raise TypeError(f"Unknown expression {expr!r}.")


def eval_expr(expr: Expr, env: ConcreteEnv) -> int:
    """Evaluate an expression.

    Parameters
    ----------
    expr : Expr
        Expression to evaluate.
    env : ConcreteEnv
        Values of the variables.

    Returns
    -------
    int
        The value, in the range of the expression's type. Comparisons and
        boolean operators yield ``0`` or ``1``.

    Raises
    ------
    EvaluationFault
        On division by zero or an out-of-range shift amount.

    Examples
    --------
    >>> from pygoto.intervals.ir import BinaryOperator, BinOp, Const, MachType, Var
    >>> s4 = MachType(True, 4)
    >>> env = ConcreteEnv({"x": s4}, {"x": 7})
    >>> eval_expr(BinOp(BinaryOperator.ADD, Var("x"), Const(1, s4)), env)
    -8
    """
    return _evaluate(expr, env, env.symbols)


def eval_state(stmt: Stmt, env: ConcreteEnv) -> ConcreteEnv:
    """Apply the effect of a statement on the environment.

    Only assignments change the environment. Assertions, assumptions and
    jumps are checked by :func:`eval_program`.
    """
    if isinstance(stmt, Assignment):
        return env.set(stmt.target, eval_expr(stmt.expr, env))
    return env


@dataclass(frozen=True)
class Safe:
    """The run ended, or stopped on a false assumption, without failing an assertion."""

    def to_json(self) -> dict:
        return {"verdict": "safe"}


@dataclass(frozen=True)
class AssertFail:
    """An assertion evaluated to ``0``."""

    index: int
    env: ConcreteEnv

    def to_json(self) -> dict:
        return {"verdict": "assert-fail", "env": self.env.to_json(), "failed_at": self.index}


@dataclass(frozen=True)
class StepLimit:
    """The run executed more statements than allowed."""

    steps: int

    def to_json(self) -> dict:
        return {"verdict": "step-limit", "steps": self.steps}


@dataclass(frozen=True)
class RuntimeFault:
    """An expression could not be evaluated."""

    kind: FaultKind
    index: int

    def to_json(self) -> dict:
        return {"verdict": "runtime-fault", "kind": self.kind.value, "index": self.index}


RunVerdict = typing.Union[Safe, AssertFail, StepLimit, RuntimeFault]

_VERDICT_CLASSES = {
    Safe: "safe",
    AssertFail: "assert-fail",
    StepLimit: "step-limit",
    RuntimeFault: "runtime-fault",
}


def verdict_class(verdict: RunVerdict) -> str:
    """Return the name of the verdict variant, such as ``"assert-fail"``."""
    return _VERDICT_CLASSES[type(verdict)]


Observer = typing.Callable[[int, typing.Mapping[str, int]], None]


def eval_program(
    env: ConcreteEnv,
    program: Program,
    step_limit: int = DEFAULT_STEP_LIMIT,
    observer: typing.Optional[Observer] = None,
) -> RunVerdict:
    """Run a program from an initial environment.

    Parameters
    ----------
    env : ConcreteEnv
        Initial values of all declared variables.
    program : Program
        Program to run.
    step_limit : int, optional
        Maximum number of executed statements. The default is ``10**6``.
    observer : callable, optional
        Called as ``observer(index, values)`` before each executed statement,
        with the current values. The mapping is only valid during the call.

    Returns
    -------
    RunVerdict
        ``Safe`` when the run falls off the end or meets a false assumption,
        ``AssertFail`` at the first false assertion, ``StepLimit`` when the
        limit is exceeded and ``RuntimeFault`` when an expression faults.
    """
    symbols = program.symbols
    stmts = program.stmts
    values = {name: env[name] for name in symbols}
    count = len(stmts)
    pc = 1
    steps = 0
    while pc <= count:
        if steps >= step_limit:
            return StepLimit(steps)
        steps += 1
        stmt = stmts[pc - 1]
        if observer is not None:
            observer(pc, values)
        try:
            if isinstance(stmt, Assignment):
                values[stmt.target] = symbols[stmt.target].wrap(
                    _evaluate(stmt.expr, values, symbols)
                )
            elif isinstance(stmt, IfThenGoto):
                if _evaluate(stmt.cond, values, symbols) != 0:
                    pc = program.label_index[stmt.label]
                    continue
            elif isinstance(stmt, Assumption):
                if _evaluate(stmt.expr, values, symbols) == 0:
                    return Safe()
            elif isinstance(stmt, Assert):
                if _evaluate(stmt.expr, values, symbols) == 0:
                    return AssertFail(pc, ConcreteEnv(symbols, values))
        except EvaluationFault as fault:
            return RuntimeFault(fault.kind, pc)
        pc += 1
    return Safe()


@dataclass
class AssertOutcome:
    """How often the runs of an enumeration reached and failed one assertion."""

    reached: int = 0
    failed: int = 0
    faulted: int = 0

    @property
    def passed(self) -> int:
        return self.reached - self.failed - self.faulted

    def merge(self, other: "AssertOutcome") -> None:
        self.reached += other.reached
        self.failed += other.failed
        self.faulted += other.faulted

    def to_json(self) -> dict:
        return {"reached": self.reached, "failed": self.failed, "faulted": self.faulted}


Outcomes = typing.Dict[int, AssertOutcome]


def _outcomes_json(outcomes: typing.Optional[Outcomes]):
    if outcomes is None:
        return None
    return {str(index): outcomes[index].to_json() for index in sorted(outcomes)}


@dataclass(frozen=True)
class AllSafe:
    """Every initial environment leads to a safe run."""

    explored: int
    outcomes: typing.Optional[Outcomes] = field(default=None, compare=False)

    def to_json(self) -> dict:
        data = {"verdict": "all-safe", "explored": self.explored}
        if self.outcomes is not None:
            data["asserts"] = _outcomes_json(self.outcomes)
        return data


@dataclass(frozen=True)
class Counterexample:
    """The smallest initial environment whose run fails an assertion."""

    env: ConcreteEnv
    failed_at: int
    explored: int = 0
    outcomes: typing.Optional[Outcomes] = field(default=None, compare=False)

    def to_json(self) -> dict:
        data = {
            "verdict": "counterexample",
            "env": self.env.to_json(),
            "failed_at": self.failed_at,
            "explored": self.explored,
        }
        if self.outcomes is not None:
            data["asserts"] = _outcomes_json(self.outcomes)
        return data


@dataclass(frozen=True)
class Inconclusive:
    """Some run hit the step limit or faulted, and no run failed an assertion."""

    reason: str
    env: ConcreteEnv
    index: typing.Optional[int] = None
    explored: int = 0
    outcomes: typing.Optional[Outcomes] = field(default=None, compare=False)

    def to_json(self) -> dict:
        data = {
            "verdict": "inconclusive",
            "reason": self.reason,
            "env": self.env.to_json(),
            "index": self.index,
            "explored": self.explored,
        }
        if self.outcomes is not None:
            data["asserts"] = _outcomes_json(self.outcomes)
        return data


CheckResult = typing.Union[AllSafe, Counterexample, Inconclusive]


@dataclass
class _Partial:
    explored: int = 0
    counterexample: typing.Optional[AssertFail] = None
    inconclusive: typing.Optional[typing.Tuple[RunVerdict, ConcreteEnv]] = None
    outcomes: typing.Optional[Outcomes] = None


class _Enumeration:
    """Initial environments of a program, indexed in lexicographic order."""

    def __init__(self, program: Program, names: typing.List[str]):
        self.program = program
        self.names = names
        self.ranges = [range(program.symbols[n].min, program.symbols[n].max + 1) for n in names]
        self.size = math.prod(len(values) for values in self.ranges)

    def envs(self, start: int, stop: int) -> typing.Iterator[ConcreteEnv]:
        product = itertools.product(*self.ranges)
        for values in itertools.islice(product, start, stop):
            yield ConcreteEnv(self.program.symbols, dict(zip(self.names, values)))


def _run_slice(
    enumeration: _Enumeration,
    start: int,
    stop: int,
    step_limit: int,
    collect_outcomes: bool,
) -> _Partial:
    program = enumeration.program
    partial = _Partial(outcomes={} if collect_outcomes else None)
    observer = None
    if collect_outcomes:
        asserts = {index for index in program.indices() if isinstance(program[index], Assert)}
        partial.outcomes = {index: AssertOutcome() for index in sorted(asserts)}

        def observer(index, values):
            if index in asserts:
                partial.outcomes[index].reached += 1

    for env in enumeration.envs(start, stop):
        verdict = eval_program(env, program, step_limit, observer)
        partial.explored += 1
        if isinstance(verdict, AssertFail):
            if collect_outcomes:
                partial.outcomes[verdict.index].failed += 1
            if partial.counterexample is None:
                partial.counterexample = AssertFail(verdict.index, env)
                if not collect_outcomes:
                    break
        elif isinstance(verdict, (StepLimit, RuntimeFault)):
            if collect_outcomes and isinstance(verdict, RuntimeFault) and verdict.index in asserts:
                partial.outcomes[verdict.index].faulted += 1
            if partial.inconclusive is None:
                partial.inconclusive = (verdict, env)
    return partial


def _slices(size: int, parts: int) -> typing.List[typing.Tuple[int, int]]:
    parts = max(1, min(parts, size))
    step = -(-size // parts)
    return [(start, min(start + step, size)) for start in range(0, size, step)] or [(0, 0)]


def exhaustive_check(
    program: Program,
    width_cap: int = 8,
    step_limit: int = DEFAULT_STEP_LIMIT,
    *,
    budget: int = DEFAULT_STATE_BUDGET,
    workers: int = 1,
    progress_bar: bool = False,
    collect_outcomes: bool = False,
) -> CheckResult:
    """Decide the safety of a program by running it from every initial environment.

    Only the variables whose initial value may be read are enumerated; the
    others start at ``0``, which does not change any run.

    Parameters
    ----------
    program : Program
        Program to check.
    width_cap : int, optional
        Widest declared type accepted, in bits. The default is ``8``.
    step_limit : int, optional
        Statement budget of each run. The default is ``10**6``.
    budget : int, optional
        Maximum number of enumerated environments. The default is ``2**20``.
    workers : int, optional
        Number of threads sharing the enumeration. The default is ``1``.
    progress_bar : bool, optional
        Whether to show a progress bar. The default is ``False``.
    collect_outcomes : bool, optional
        Whether to run every environment and count, per assertion, how many
        runs reached it and how many failed it. The default is ``False``, in
        which case the enumeration stops at the first counterexample.

    Returns
    -------
    AllSafe, Counterexample or Inconclusive
        ``Counterexample`` carries the smallest failing environment in
        lexicographic variable order and takes precedence over
        ``Inconclusive``.

    Raises
    ------
    WidthCapExceeded
        If a declared type is wider than ``width_cap``.
    EnumerationBudgetExceeded
        If more than ``budget`` environments would be enumerated.
    """
    check_valid_width_cap(width_cap)
    check_positive_int(step_limit, "step_limit")
    check_positive_int(budget, "budget")
    check_positive_int(workers, "workers")
    for name, mach_type in program.symbols.items():
        if mach_type.width > width_cap:
            raise WidthCapExceeded(
                f"Variable '{name}' has type {mach_type}, wider than the cap of {width_cap} bits."
            )
    enumeration = _Enumeration(program, sorted(live_on_entry(program)))
    if enumeration.size > budget:
        raise EnumerationBudgetExceeded(enumeration.size, budget)
    logger.info(
        f"Enumerating {enumeration.size} initial environments over {enumeration.names or 'no'} "
        f"variables."
    )

    if workers == 1 and not progress_bar:
        partials = [_run_slice(enumeration, 0, enumeration.size, step_limit, collect_outcomes)]
    else:
        jobs = [
            (enumeration, start, stop, step_limit, collect_outcomes)
            for start, stop in _slices(enumeration.size, workers * 4)
        ]
        partials = EnumerationPool(workers).map(_run_slice, jobs, progress_bar=progress_bar)

    result = _combine(partials, collect_outcomes)
    logger.info(f"Exhaustive check finished: {result.to_json()['verdict']}.")
    return result


def _combine(partials: typing.List[_Partial], collect_outcomes: bool) -> CheckResult:
    explored = sum(partial.explored for partial in partials)
    outcomes = None
    if collect_outcomes:
        outcomes = {}
        for partial in partials:
            for index, outcome in partial.outcomes.items():
                outcomes.setdefault(index, AssertOutcome()).merge(outcome)
    # slices are contiguous and in order, so the first hit is the smallest
    for partial in partials:
        if partial.counterexample is not None:
            failure = partial.counterexample
            return Counterexample(failure.env, failure.index, explored, outcomes)
    for partial in partials:
        if partial.inconclusive is not None:
            verdict, env = partial.inconclusive
            index = getattr(verdict, "index", None)
            return Inconclusive(verdict_class(verdict), env, index, explored, outcomes)
    return AllSafe(explored, outcomes)
