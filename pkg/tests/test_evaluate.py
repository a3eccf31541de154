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

"""Testing of abstract expression evaluation and guard restriction."""

import pytest

from pygoto.intervals.absint import AbstractEnv
from pygoto.intervals.domains import (
    BoolInterval,
    DomainConfig,
    DomainKind,
    IntInterval,
    WrapInterval,
    all_configs,
    convert,
    eval_abs_cond,
    eval_abs_expr,
    init,
    interval_class,
    may_fault,
    restrict,
)
from pygoto.intervals.ir import (
    BOOL_TYPE,
    BinaryOperator,
    BinOp,
    BitNot,
    Cast,
    Const,
    MachType,
    Not,
    Var,
)

S8 = MachType(True, 8)
U8 = MachType(False, 8)
S4 = MachType(True, 4)

INTEGER = DomainConfig()
WRAPPED = DomainConfig(DomainKind.WRAPPED)


def _env(config=INTEGER, **ranges):
    symbols = {"x": S8, "y": S8, "u": U8}
    cls = interval_class(config)
    env = AbstractEnv.initial(symbols, config.domain)
    for name, (low, high) in ranges.items():
        env = env.set(name, cls.from_range(symbols[name], low, high))
    return env


def _le(left, right):
    return BinOp(BinaryOperator.LE, left, right)


def test_all_configs():
    configs = all_configs()
    assert len(configs) == 16
    assert len(set(configs)) == 16
    assert configs[0] == DomainConfig(DomainKind.INTEGER, True, True, True)
    assert configs[0].label() == "integer+arith+bitwise+widen"
    assert configs[-1].label() == "wrapped"


def test_config_to_json():
    assert WRAPPED.to_json() == {
        "domain": "wrapped",
        "arithmetic": True,
        "bitwise": True,
        "widening": False,
    }
    assert DomainConfig("wrapped").wrapped


def test_init_is_top():
    assert init(S8, INTEGER) == IntInterval.top(S8)
    assert init(S8, WRAPPED) == WrapInterval.top(S8)


@pytest.mark.parametrize(
    "truth, expected",
    [
        (BoolInterval.TRUE, BoolInterval.FALSE),
        (BoolInterval.FALSE, BoolInterval.TRUE),
        (BoolInterval.MAYBE, BoolInterval.MAYBE),
        (BoolInterval.BOTTOM, BoolInterval.BOTTOM),
    ],
)
def test_bool_negate(truth, expected):
    assert truth.negate() is expected


def test_bool_lattice():
    assert BoolInterval.TRUE.join(BoolInterval.FALSE) is BoolInterval.MAYBE
    assert BoolInterval.BOTTOM.join(BoolInterval.TRUE) is BoolInterval.TRUE
    assert BoolInterval.TRUE.meet(BoolInterval.FALSE) is BoolInterval.BOTTOM
    assert BoolInterval.MAYBE.meet(BoolInterval.FALSE) is BoolInterval.FALSE
    assert BoolInterval.TRUE.conjoin(BoolInterval.MAYBE) is BoolInterval.MAYBE
    assert BoolInterval.FALSE.conjoin(BoolInterval.MAYBE) is BoolInterval.FALSE
    assert str(BoolInterval.MAYBE) == "[0, 1]"


def test_bool_of_interval():
    assert BoolInterval.of_interval(IntInterval(0, 0, S8)) is BoolInterval.FALSE
    assert BoolInterval.of_interval(IntInterval(0, 3, S8)) is BoolInterval.MAYBE
    assert BoolInterval.of_interval(IntInterval(1, 3, S8)) is BoolInterval.TRUE
    assert BoolInterval.of_interval(IntInterval.bottom(S8)) is BoolInterval.BOTTOM


def test_convert():
    assert convert(IntInterval(0, 100, S8), U8) == IntInterval(0, 100, U8)
    assert convert(IntInterval(-1, 1, S8), U8) == IntInterval(0, 255, U8)
    wrapped = convert(WrapInterval.from_range(S8, -1, 1), U8)
    assert wrapped.value_ranges() == [(0, 1), (255, 255)]
    assert convert(IntInterval.top(S8), U8).is_top()


def test_eval_terms():
    env = _env(x=(0, 100))
    assert eval_abs_expr(Var("x"), env, INTEGER) == IntInterval(0, 100, S8)
    assert eval_abs_expr(Const(5, S8), env, INTEGER) == IntInterval(5, 5, S8)
    assert eval_abs_expr(Var("y"), env, INTEGER).is_top()


def test_eval_arithmetic():
    env = _env(x=(0, 99))
    expr = BinOp(BinaryOperator.ADD, Var("x"), Const(1, S8))
    assert eval_abs_expr(expr, env, INTEGER) == IntInterval(1, 100, S8)


def test_eval_arithmetic_disabled():
    env = _env(x=(0, 99))
    expr = BinOp(BinaryOperator.ADD, Var("x"), Const(1, S8))
    config = DomainConfig(arithmetic=False)
    assert eval_abs_expr(expr, env, config).is_top()


def test_eval_bitwise_disabled():
    env = _env(u=(0, 3))
    config = DomainConfig(bitwise=False)
    assert eval_abs_expr(BitNot(Var("u")), env, config).is_top()
    assert eval_abs_expr(Cast(S8, Var("u")), env, config).is_top()
    assert eval_abs_expr(BinOp(BinaryOperator.AND, Var("u"), Const(1, U8)), env, config).is_top()


def test_eval_bitwise():
    env = _env(u=(0, 3))
    assert eval_abs_expr(BitNot(Var("u")), env, INTEGER) == IntInterval(252, 255, U8)
    assert eval_abs_expr(Cast(S8, Var("u")), env, INTEGER) == IntInterval(0, 3, S8)
    shifted = eval_abs_expr(BinOp(BinaryOperator.SHL, Var("u"), Const(2, U8)), env, INTEGER)
    assert shifted == IntInterval(0, 12, U8)


def test_eval_comparison_as_value():
    env = _env(x=(0, 10))
    value = eval_abs_expr(_le(Var("x"), Const(20, S8)), env, INTEGER)
    assert value == IntInterval(1, 1, BOOL_TYPE)
    unknown = eval_abs_expr(_le(Var("x"), Const(5, S8)), env, INTEGER)
    assert unknown == IntInterval(0, 1, BOOL_TYPE)


def test_eval_on_bottom_env():
    env = _env().to_bottom()
    assert eval_abs_expr(Var("x"), env, INTEGER).is_bottom()
    assert eval_abs_expr(Const(1, S8), env, INTEGER).is_bottom()
    assert eval_abs_cond(Const(1, S8), env, INTEGER) is BoolInterval.BOTTOM


@pytest.mark.parametrize("config", [INTEGER, WRAPPED])
def test_eval_cond(config):
    env = _env(config, x=(0, 100))
    assert eval_abs_cond(_le(Const(0, S8), Var("x")), env, config) is BoolInterval.TRUE
    assert eval_abs_cond(_le(Const(101, S8), Var("x")), env, config) is BoolInterval.FALSE
    assert eval_abs_cond(_le(Const(50, S8), Var("x")), env, config) is BoolInterval.MAYBE
    assert eval_abs_cond(Not(Var("x")), env, config) is BoolInterval.MAYBE
    assert eval_abs_cond(Const(0, BOOL_TYPE), env, config) is BoolInterval.FALSE


def test_comparisons_ignore_precision_flags():
    env = _env(x=(0, 100))
    config = DomainConfig(arithmetic=False, bitwise=False)
    assert eval_abs_cond(_le(Const(0, S8), Var("x")), env, config) is BoolInterval.TRUE


@pytest.mark.parametrize("config", [INTEGER, WRAPPED])
def test_restrict_le(config):
    env = _env(config, x=(0, 100))
    guard = _le(Const(100, S8), Var("x"))
    taken = restrict(guard, env, True, config)
    fallthrough = restrict(guard, env, False, config)
    assert taken.get("x").value_ranges() == [(100, 100)]
    assert fallthrough.get("x").value_ranges() == [(0, 99)]


def test_restrict_two_variables():
    env = _env(x=(0, 10), y=(5, 20))
    result = restrict(_le(Var("y"), Var("x")), env, True, INTEGER)
    assert result.get("x") == IntInterval(5, 10, S8)
    assert result.get("y") == IntInterval(5, 10, S8)


def test_restrict_impossible_guard_is_bottom():
    env = _env(x=(0, 10))
    assert restrict(_le(Const(20, S8), Var("x")), env, True, INTEGER).is_bottom()
    assert restrict(Const(0, BOOL_TYPE), env, True, INTEGER).is_bottom()
    assert restrict(Const(1, BOOL_TYPE), env, False, INTEGER).is_bottom()


def test_restrict_terms():
    env = _env(u=(0, 5))
    assert restrict(Var("u"), env, True, INTEGER).get("u") == IntInterval(1, 5, U8)
    assert restrict(Var("u"), env, False, INTEGER).get("u") == IntInterval(0, 0, U8)
    assert restrict(Not(Var("u")), env, True, INTEGER).get("u") == IntInterval(0, 0, U8)


def test_restrict_mixed_types_keeps_env():
    env = _env(x=(0, 10), u=(0, 5))
    assert restrict(_le(Var("x"), Var("u")), env, True, INTEGER) == env


def test_may_fault():
    env = _env(x=(0, 10), y=(1, 4))
    divide = BinOp(BinaryOperator.DIV, Var("x"), Var("y"))
    assert not may_fault(divide, env, INTEGER)
    assert may_fault(BinOp(BinaryOperator.DIV, Var("y"), Var("x")), env, INTEGER)
    shift = BinOp(BinaryOperator.SHL, Var("y"), Var("x"))
    assert may_fault(shift, env, INTEGER)
    assert not may_fault(BinOp(BinaryOperator.SHL, Var("x"), Var("y")), env, INTEGER)
    assert not may_fault(Var("x"), env, INTEGER)


def test_wrapped_keeps_overflowed_sum():
    symbols = {"x": S4}
    env = AbstractEnv.initial(symbols, DomainKind.WRAPPED)
    env = env.set("x", WrapInterval.from_range(S4, 0, 7))
    result = eval_abs_expr(BinOp(BinaryOperator.ADD, Var("x"), Const(1, S4)), env, WRAPPED)
    assert result.value_ranges() == [(-8, -8), (1, 7)]
    integer_env = AbstractEnv.initial(symbols, DomainKind.INTEGER).set(
        "x", IntInterval(0, 7, S4)
    )
    overflowed = eval_abs_expr(
        BinOp(BinaryOperator.ADD, Var("x"), Const(1, S4)), integer_env, INTEGER
    )
    assert overflowed == IntInterval(-8, 7, S4)
