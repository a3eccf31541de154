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

"""Abstract evaluation of expressions and guards.

The functions dispatch on the domain selected by a :class:`DomainConfig`.
Environments are read through a small protocol: ``symbols``,
``is_bottom()``, ``get(name)``, ``set(name, interval)``, ``to_bottom()`` and
``join(other)``, which :class:`~pygoto.intervals.absint.env.AbstractEnv`
implements.
"""

import typing

from pygoto.intervals.domains.bitwise import bitwise_bounds
from pygoto.intervals.domains.boolean import BoolInterval
from pygoto.intervals.domains.config import DomainConfig, DomainKind
from pygoto.intervals.domains.integer import IntInterval
from pygoto.intervals.domains.wrapped import WrapInterval
from pygoto.intervals.ir.types import (
    BinaryOperator,
    BinOp,
    BitNot,
    Cast,
    Const,
    Expr,
    MachType,
    Not,
    Term,
    Var,
    common_type,
    expr_type,
)

Interval = typing.Union[IntInterval, WrapInterval]

_ARITHMETIC = {
    BinaryOperator.ADD: "add",
    BinaryOperator.SUB: "sub",
    BinaryOperator.MUL: "mul",
    BinaryOperator.DIV: "div",
}


def interval_class(domain) -> type:
    """Return the interval class of a domain kind or configuration."""
    if isinstance(domain, DomainConfig):
        domain = domain.domain
    return WrapInterval if DomainKind(domain) is DomainKind.WRAPPED else IntInterval


def init(mach_type: MachType, config: DomainConfig) -> Interval:
    """Return the initial value of a variable: the top of its type."""
    return interval_class(config).top(mach_type)


def join(a: Interval, b: Interval) -> Interval:
    return a.join(b)


def meet(a: Interval, b: Interval) -> Interval:
    return a.meet(b)


def leq(a: Interval, b: Interval) -> bool:
    """Check that ``a`` contains ``b``, that is ``b ⊑ a``."""
    return a.contains_interval(b)


def widen(old: Interval, new: Interval) -> Interval:
    return old.widen(new)


def singleton(interval: Interval) -> typing.Optional[int]:
    return interval.singleton()


def contains(interval: Interval, value: int) -> bool:
    return interval.contains(value)


def convert(interval: Interval, mach_type: MachType) -> Interval:
    """Convert values to another type with wraparound (C conversion rules)."""
    if interval.type == mach_type:
        return interval
    cls = type(interval)
    if interval.is_bottom():
        return cls.bottom(mach_type)
    if interval.is_top():
        return cls.top(mach_type)
    result = cls.bottom(mach_type)
    for low, high in interval.value_ranges():
        result = result.join(cls.from_range(mach_type, low, high, wrap_exact=True))
    return result


def _term(term: Term, env, cls) -> Interval:
    if isinstance(term, Const):
        if env.is_bottom():
            return cls.bottom(term.type)
        return cls.const(term.type, term.value)
    return env.get(term.name)


def _operands(expr: BinOp, env, cls):
    return _term(expr.left, env, cls), _term(expr.right, env, cls)


def eval_abs_expr(expr: Expr, env, config: DomainConfig) -> Interval:
    """Evaluate an expression to an interval of its type.

    Parameters
    ----------
    expr : Expr
        Expression to evaluate.
    env : AbstractEnv
        Intervals of the variables.
    config : DomainConfig
        Precision settings. Operators switched off evaluate to the initial
        value of their result type.

    Returns
    -------
    IntInterval or WrapInterval
        A sound interval of ``expr_type(expr)``. Comparisons and boolean
        operators give the interval of their three-valued truth.
    """
    cls = interval_class(config)
    symbols = env.symbols
    result_type = expr_type(expr, symbols)
    if isinstance(expr, (Var, Const)):
        return _term(expr, env, cls)
    if isinstance(expr, Not) or (isinstance(expr, BinOp) and expr.op.is_boolean):
        return eval_abs_cond(expr, env, config).to_interval(result_type, cls)
    if env.is_bottom():
        return cls.bottom(result_type)
    if isinstance(expr, BinOp):
        left, right = _operands(expr, env, cls)
        if expr.op.is_arithmetic:
            if not config.arithmetic:
                return init(result_type, config)
            left, right = convert(left, result_type), convert(right, result_type)
            return getattr(left, _ARITHMETIC[expr.op])(right)
        if not config.bitwise:
            return init(result_type, config)
        if expr.op.is_shift:
            return bitwise_bounds(expr.op.value, left, right)
        left, right = convert(left, result_type), convert(right, result_type)
        return bitwise_bounds(expr.op.value, left, right)
    if not config.bitwise:
        return init(result_type, config)
    operand = _term(expr.operand, env, cls)
    if isinstance(expr, BitNot):
        return bitwise_bounds("~", operand)
    if isinstance(expr, Cast):
        return bitwise_bounds("cast", operand, target=expr.type)
    raise TypeError(f"Unknown expression {expr!r}.")


def _compare(left: Interval, right: Interval) -> BoolInterval:
    mach_type = common_type(left.type, right.type)
    left, right = convert(left, mach_type), convert(right, mach_type)
    if left.is_bottom() or right.is_bottom():
        return BoolInterval.BOTTOM
    left_low, left_high = left.hull()
    right_low, right_high = right.hull()
    if left_high <= right_low:
        return BoolInterval.TRUE
    if left_low > right_high:
        return BoolInterval.FALSE
    return BoolInterval.MAYBE


def eval_abs_cond(expr: Expr, env, config: DomainConfig) -> BoolInterval:
    """Evaluate the three-valued truth of an expression (nonzero is true).

    Comparisons are always interpreted, whatever the precision flags.
    """
    if env.is_bottom():
        return BoolInterval.BOTTOM
    cls = interval_class(config)
    if isinstance(expr, (Var, Const)):
        return BoolInterval.of_interval(_term(expr, env, cls))
    if isinstance(expr, Not):
        return BoolInterval.of_interval(_term(expr.operand, env, cls)).negate()
    if isinstance(expr, BinOp) and expr.op is BinaryOperator.LE:
        return _compare(*_operands(expr, env, cls))
    if isinstance(expr, BinOp) and expr.op is BinaryOperator.LAND:
        left, right = _operands(expr, env, cls)
        return BoolInterval.of_interval(left).conjoin(BoolInterval.of_interval(right))
    return BoolInterval.of_interval(eval_abs_expr(expr, env, config))


def _restrict_var(env, name: str, constraint: Interval):
    return env.set(name, env.get(name).meet(constraint))


def _bound(cls, mach_type: MachType, low, high) -> Interval:
    low = max(low, mach_type.min)
    high = min(high, mach_type.max)
    return cls.from_range(mach_type, low, high)


def _restrict_le(expr: BinOp, env, polarity: bool, cls):
    left, right = expr.left, expr.right
    symbols = env.symbols
    left_type = left.type if isinstance(left, Const) else symbols[left.name]
    right_type = right.type if isinstance(right, Const) else symbols[right.name]
    if left_type != right_type:
        return env
    mach_type = left_type
    left_low, left_high = _term(left, env, cls).hull()
    right_low, right_high = _term(right, env, cls).hull()
    result = env
    if polarity:
        # left <= right
        if isinstance(left, Var):
            result = _restrict_var(
                result, left.name, _bound(cls, mach_type, mach_type.min, right_high)
            )
        if isinstance(right, Var):
            result = _restrict_var(
                result, right.name, _bound(cls, mach_type, left_low, mach_type.max)
            )
    else:
        # right < left
        if isinstance(left, Var):
            result = _restrict_var(
                result, left.name, _bound(cls, mach_type, right_low + 1, mach_type.max)
            )
        if isinstance(right, Var):
            result = _restrict_var(
                result, right.name, _bound(cls, mach_type, mach_type.min, left_high - 1)
            )
    return result


def _restrict_term(term: Term, env, polarity: bool, cls):
    if not isinstance(term, Var):
        return env
    mach_type = env.symbols[term.name]
    if polarity:
        return env.set(term.name, env.get(term.name).exclude_endpoint(0))
    return _restrict_var(env, term.name, cls.const(mach_type, 0))


def restrict(expr: Expr, env, polarity: bool, config: DomainConfig):
    """Tighten an environment to the states where ``expr`` has the given truth.

    Parameters
    ----------
    expr : Expr
        Guard expression.
    env : AbstractEnv
        Environment to tighten.
    polarity : bool
        ``True`` to keep the states where ``expr`` is nonzero, ``False`` for
        the states where it is zero.
    config : DomainConfig
        Precision settings.

    Returns
    -------
    AbstractEnv
        An environment below ``env`` that still contains every state of
        ``env`` satisfying the guard. Bottom when no state can satisfy it.

    Examples
    --------
    With ``x`` in ``[0, 100]``, ``restrict(x <= 99, env, True, config)``
    binds ``x`` to ``[0, 99]`` and the ``False`` polarity binds it to
    ``[100, 100]``.
    """
    if env.is_bottom():
        return env
    truth = eval_abs_cond(expr, env, config)
    if truth is BoolInterval.BOTTOM or truth is BoolInterval.of(not polarity):
        return env.to_bottom()
    cls = interval_class(config)
    if isinstance(expr, (Var, Const)):
        return _restrict_term(expr, env, polarity, cls)
    if isinstance(expr, Not):
        return _restrict_term(expr.operand, env, not polarity, cls)
    if isinstance(expr, BinOp) and expr.op is BinaryOperator.LE:
        return _restrict_le(expr, env, polarity, cls)
    if isinstance(expr, BinOp) and expr.op is BinaryOperator.LAND:
        if polarity:
            return _restrict_term(
                expr.right, _restrict_term(expr.left, env, True, cls), True, cls
            )
        return _restrict_term(expr.left, env, False, cls).join(
            _restrict_term(expr.right, env, False, cls)
        )
    return env


def may_fault(expr: Expr, env, config: DomainConfig) -> bool:
    """Check whether evaluating ``expr`` may divide by zero or shift out of range."""
    if env.is_bottom() or not isinstance(expr, BinOp):
        return False
    cls = interval_class(config)
    left, right = _operands(expr, env, cls)
    if expr.op is BinaryOperator.DIV:
        divisor = convert(right, common_type(left.type, right.type))
        return divisor.contains(0)
    if expr.op.is_shift:
        if right.is_bottom():
            return False
        low, high = right.hull()
        return low < 0 or high >= left.type.width
    return False

