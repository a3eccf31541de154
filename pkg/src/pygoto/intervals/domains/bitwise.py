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

"""Bounds of bitwise operators over intervals.

The ``min_*``/``max_*`` functions take unsigned bounds ``a <= b`` and
``c <= d`` of two operands and return the exact (``or``) or a sound
(``and``, ``xor``) bound of the result. They scan the candidate bits from the
least significant one upward, so they work for any width.

:func:`bitwise_bounds` lifts them to interval values of either domain.
"""

import typing

from pygoto.intervals.errors import DomainMismatchError
from pygoto.intervals.ir.types import MachType


def best_or(x: int, y: int, m: int) -> int:
    """Return the largest raise of ``x`` within ``[x, y]`` using the candidate bits ``m``.

    Each candidate bit, from the least significant up, is set in ``x`` and the
    bits below it cleared. The scan stops at the first result above ``y``.
    """
    best = x
    while m != 0:
        lsb = m & -m
        tmp = (x | lsb) & -lsb
        if tmp > y:
            break
        best = tmp
        m &= m - 1
    return best


def min_or(a: int, b: int, c: int, d: int) -> int:
    """Return the minimum of ``x | y`` for ``x`` in ``[a, b]`` and ``y`` in ``[c, d]``.

    Examples
    --------
    >>> min_or(2, 3, 4, 5)
    6
    """
    best_a = best_or(a, b, ~a & c)
    best_c = best_or(c, d, a & ~c)
    m = best_a | c
    n = a | best_c
    return m if m < n else n


def max_or(a: int, b: int, c: int, d: int) -> int:
    """Return the maximum of ``x | y`` for ``x`` in ``[a, b]`` and ``y`` in ``[c, d]``.

    Examples
    --------
    >>> max_or(2, 3, 4, 5)
    7
    """
    e = 0
    m = b & d
    while m != 0:
        lsb = m & -m
        tmp_b = (b - lsb) | (lsb - 1)
        tmp_d = (d - lsb) | (lsb - 1)
        if tmp_b < a and tmp_d < c:
            break
        e |= lsb - 1
        m &= m - 1
    return b | d | e


def min_and(a: int, b: int, c: int, d: int, width: int) -> int:
    """Return a lower bound of ``x & y`` through ``x & y == ~(~x | ~y)``."""
    mask = (1 << width) - 1
    return mask ^ max_or(mask ^ b, mask ^ a, mask ^ d, mask ^ c)


def max_and(a: int, b: int, c: int, d: int, width: int) -> int:
    """Return an upper bound of ``x & y`` through ``x & y == ~(~x | ~y)``."""
    mask = (1 << width) - 1
    return mask ^ min_or(mask ^ b, mask ^ a, mask ^ d, mask ^ c)


def min_xor(a: int, b: int, c: int, d: int, width: int) -> int:
    """Return a lower bound of ``x ^ y``, seen as ``(x & ~y) | (~x & y)``."""
    mask = (1 << width) - 1
    return min_and(a, b, mask ^ d, mask ^ c, width) | min_and(mask ^ b, mask ^ a, c, d, width)


def max_xor(a: int, b: int, c: int, d: int, width: int) -> int:
    """Return an upper bound of ``x ^ y``, seen as ``(x & ~y) | (~x & y)``."""
    mask = (1 << width) - 1
    return max_or(
        0,
        max_and(a, b, mask ^ d, mask ^ c, width),
        0,
        max_and(mask ^ b, mask ^ a, c, d, width),
    )


def not_bounds(a: int, b: int, width: int) -> typing.Tuple[int, int]:
    """Return the exact bounds of ``~x`` for ``x`` in ``[a, b]``."""
    mask = (1 << width) - 1
    return mask ^ b, mask ^ a


_PATTERN_BOUNDS = {
    "|": lambda a, b, c, d, w: (min_or(a, b, c, d), max_or(a, b, c, d)),
    "&": lambda a, b, c, d, w: (min_and(a, b, c, d, w), max_and(a, b, c, d, w)),
    "^": lambda a, b, c, d, w: (min_xor(a, b, c, d, w), max_xor(a, b, c, d, w)),
}


def pattern_pieces(interval) -> typing.List[typing.Tuple[int, int]]:
    """Split an interval into unsigned bit-pattern ranges.

    No range crosses ``0``; for signed types no range crosses the sign
    boundary either, so every range lies in one half of the pattern space.
    """
    mach_type = interval.type
    pieces = []
    for low, high in interval.value_ranges():
        if mach_type.signed and low < 0 <= high:
            pieces.append((low, -1))
            pieces.append((0, high))
        else:
            pieces.append((low, high))
    return sorted((mach_type.to_pattern(low), mach_type.to_pattern(high)) for low, high in pieces)


def _join_all(results, empty):
    result = empty
    for value in results:
        result = result.join(value)
    return result


def _shift_amounts(amount, width: int) -> typing.List[int]:
    amounts = set()
    for low, high in amount.value_ranges():
        amounts.update(range(max(low, 0), min(high, width - 1) + 1))
    return sorted(amounts)


def bitwise_bounds(op: str, *operands, target: typing.Optional[MachType] = None):
    """Return bounds of a bitwise operator applied to intervals.

    Parameters
    ----------
    op : str
        One of ``"&"``, ``"|"``, ``"^"`` (two operands of the same type),
        ``"<<"``, ``">>"`` (value and amount), ``"~"`` (one operand) or
        ``"cast"`` (one operand and ``target``).
    *operands : IntInterval or WrapInterval
        Operand intervals, all of the same domain.
    target : MachType, optional
        Result type of ``"cast"``.

    Returns
    -------
    IntInterval or WrapInterval
        A sound interval of the result type. Shift amounts outside
        ``[0, width)`` fault at run time and are left out; when no amount is
        valid the result is the top of the type.

    Raises
    ------
    DomainMismatchError
        If the operands of ``& | ^`` have different types.
    """
    first = operands[0]
    cls = type(first)
    if op == "cast":
        if first.is_bottom():
            return cls.bottom(target)
        pieces = [
            cls.from_range(target, low, high, wrap_exact=True)
            for low, high in first.value_ranges()
        ]
        return _join_all(pieces, cls.bottom(target))
    if op == "~":
        if first.is_bottom():
            return first
        width = first.type.width
        pieces = [
            cls.from_pattern_range(first.type, *not_bounds(low, high, width))
            for low, high in pattern_pieces(first)
        ]
        return _join_all(pieces, cls.bottom(first.type))
    second = operands[1]
    if op in ("<<", ">>"):
        mach_type = first.type
        if first.is_bottom() or second.is_bottom():
            return cls.bottom(mach_type)
        amounts = _shift_amounts(second, mach_type.width)
        if not amounts:
            return cls.top(mach_type)
        pieces = []
        for k in amounts:
            for low, high in first.value_ranges():
                if op == "<<":
                    pieces.append(cls.from_range(mach_type, low << k, high << k, wrap_exact=True))
                else:
                    pieces.append(cls.from_range(mach_type, low >> k, high >> k))
        return _join_all(pieces, cls.bottom(mach_type))
    if first.type != second.type:
        raise DomainMismatchError(
            f"Operands of '{op}' have different types {first.type} and {second.type}."
        )
    mach_type = first.type
    if first.is_bottom() or second.is_bottom():
        return cls.bottom(mach_type)
    bounds = _PATTERN_BOUNDS[op]
    pieces = [
        cls.from_pattern_range(mach_type, *bounds(a, b, c, d, mach_type.width))
        for a, b in pattern_pieces(first)
        for c, d in pattern_pieces(second)
    ]
    return _join_all(pieces, cls.bottom(mach_type))
