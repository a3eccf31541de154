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

"""Random programs checked against concrete runs.

The sweeps are skipped unless selected with ``pytest -m soundness``. Their
size comes from ``PYGOTO_FUZZ_PROGRAMS`` and ``PYGOTO_FUZZ_ENVS``.
"""

import itertools

import pytest

from conftest import FUZZ_ENVS, FUZZ_PROGRAMS
from pygoto.intervals.absint import AbstractEnv, compute_abs
from pygoto.intervals.concrete import (
    AssertFail,
    ConcreteEnv,
    eval_expr,
    eval_program,
    verdict_class,
)
from pygoto.intervals.domains import DomainConfig, DomainKind, all_configs, eval_abs_expr
from pygoto.intervals.errors import EvaluationFault
from pygoto.intervals.ir import BinaryOperator, BinOp, BitNot, Cast, MachType, Not, Var
from pygoto.intervals.transform import (
    Verdict,
    assertion_report,
    instrument,
    remove_dead_code,
    singleton_propagate,
)

STEP_LIMIT = 10_000


def _random_envs(rng, program, count):
    for _ in range(count):
        values = {
            name: rng.randint(mach_type.min, mach_type.max)
            for name, mach_type in program.symbols.items()
        }
        yield ConcreteEnv(program.symbols, values)


def _check_containment(program, domain_map, env):
    def observer(index, values):
        entry = domain_map.entry(index)
        assert not entry.is_bottom(), f"statement {index} reached but analysed as unreachable"
        for name, value in values.items():
            assert entry.get(name).contains(value), (
                f"{name}={value} escapes {entry.get(name)} at statement {index}"
            )

    return eval_program(env, program, STEP_LIMIT, observer)


@pytest.mark.soundness
@pytest.mark.parametrize("config", all_configs(), ids=lambda config: config.label())
def test_entry_states_contain_concrete_states(config, program_factory, rng):
    for _ in range(FUZZ_PROGRAMS):
        program = program_factory()
        domain_map = compute_abs(program, config)
        verdicts = {entry.index: entry.verdict for entry in assertion_report(program, domain_map)}
        for env in _random_envs(rng, program, FUZZ_ENVS):
            result = _check_containment(program, domain_map, env)
            if isinstance(result, AssertFail):
                assert verdicts[result.index] is not Verdict.PROVEN


@pytest.mark.soundness
@pytest.mark.parametrize("mode", ["loop", "guard_full", "all_local"])
def test_transforms_keep_concrete_behavior(mode, program_factory, rng):
    config = all_configs()[0]
    for _ in range(FUZZ_PROGRAMS):
        program = program_factory(n_vars=3)
        domain_map = compute_abs(program, config)
        transformed = [
            singleton_propagate(program, domain_map),
            remove_dead_code(program, domain_map),
            instrument(program, domain_map, mode),
        ]
        for env in _random_envs(rng, program, FUZZ_ENVS):
            expected = verdict_class(eval_program(env, program, STEP_LIMIT))
            for other in transformed:
                assert verdict_class(eval_program(env, other, STEP_LIMIT)) == expected


def test_small_sweep_counter_loop(counter_loop):
    # x is overwritten first, so every initial value takes the same path
    for config in all_configs():
        domain_map = compute_abs(counter_loop, config)
        for value in range(-128, 128):
            env = ConcreteEnv(counter_loop.symbols, {"x": value})
            assert verdict_class(_check_containment(counter_loop, domain_map, env)) == "safe"


def _concrete_table(op, mach_type):
    symbols = {"x": mach_type, "y": mach_type}
    expr = BinOp(op, Var("x"), Var("y"))
    values = range(mach_type.min, mach_type.max + 1)
    table = {}
    for x, y in itertools.product(values, values):
        try:
            table[x, y] = eval_expr(expr, ConcreteEnv(symbols, {"x": x, "y": y}))
        except EvaluationFault:
            pass
    return table


@pytest.mark.soundness
@pytest.mark.parametrize("domain", list(DomainKind))
@pytest.mark.parametrize("signed", [True, False], ids=["s4", "u4"])
@pytest.mark.parametrize("op", list(BinaryOperator), ids=lambda op: op.name.lower())
def test_width4_operators_exhaustive(domain, signed, op):
    mach_type = MachType(signed, 4)
    config = DomainConfig(domain)
    symbols = {"x": mach_type, "y": mach_type}
    table = _concrete_table(op, mach_type)
    expr = BinOp(op, Var("x"), Var("y"))
    cls = type(AbstractEnv.initial(symbols, domain).get("x"))
    bounds = [
        (lo, hi)
        for lo in range(mach_type.min, mach_type.max + 1)
        for hi in range(lo, mach_type.max + 1)
    ]
    for (a, b), (c, d) in itertools.product(bounds, bounds):
        env = AbstractEnv.initial(symbols, domain)
        env = env.set("x", cls.from_range(mach_type, a, b))
        env = env.set("y", cls.from_range(mach_type, c, d))
        result = eval_abs_expr(expr, env, config)
        for x, y in itertools.product(range(a, b + 1), range(c, d + 1)):
            if (x, y) in table:
                assert result.contains(table[x, y]), f"{x} {op.value} {y} escapes {result}"


_UNARY = {
    "not": Not(Var("x")),
    "bitnot": BitNot(Var("x")),
    "cast_s4": Cast(MachType(True, 4), Var("x")),
    "cast_u4": Cast(MachType(False, 4), Var("x")),
    "cast_s3": Cast(MachType(True, 3), Var("x")),
    "cast_u2": Cast(MachType(False, 2), Var("x")),
    "cast_s8": Cast(MachType(True, 8), Var("x")),
}


@pytest.mark.soundness
@pytest.mark.parametrize("domain", list(DomainKind))
@pytest.mark.parametrize("signed", [True, False], ids=["s4", "u4"])
@pytest.mark.parametrize("name", list(_UNARY))
def test_width4_unary_and_casts_exhaustive(domain, signed, name):
    mach_type = MachType(signed, 4)
    symbols = {"x": mach_type}
    expr = _UNARY[name]
    cls = type(AbstractEnv.initial(symbols, domain).get("x"))
    for lo in range(mach_type.min, mach_type.max + 1):
        for hi in range(lo, mach_type.max + 1):
            env = AbstractEnv.initial(symbols, domain).set("x", cls.from_range(mach_type, lo, hi))
            result = eval_abs_expr(expr, env, DomainConfig(domain))
            for x in range(lo, hi + 1):
                value = eval_expr(expr, ConcreteEnv(symbols, {"x": x}))
                assert result.contains(value), f"{expr} at x={x} escapes {result}"
