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

"""Integer interval domain.

An :class:`IntInterval` is a range ``[lo, hi]`` of mathematical integers whose
bounds may be infinite. It abstracts the values of a variable of a given
machine type. Operands are clamped to the range of their type before
arithmetic; a finite result leaving that range becomes ``[min, max]`` since
the machine wraps around.
"""

from dataclasses import dataclass
import math
import typing

from pygoto.intervals.errors import DomainMismatchError
from pygoto.intervals.ir.types import MachType

Bound = typing.Union[int, float]

INF = math.inf


def _bound_text(value: Bound) -> str:
    if value == INF:
        return "+inf"
    if value == -INF:
        return "-inf"
    return str(value)


def _bound_json(value: Bound):
    if value in (INF, -INF):
        return _bound_text(value)
    return value


def _truncating_div(a: int, b: int) -> int:
    quotient = abs(a) // abs(b)
    return quotient if (a < 0) == (b < 0) else -quotient


@dataclass(frozen=True)
class IntInterval:
    """Interval ``[lo, hi]`` of the integer domain.

    Parameters
    ----------
    lo : int or float
        Lower bound, ``-math.inf`` allowed.
    hi : int or float
        Upper bound, ``math.inf`` allowed.
    type : MachType
        Type of the abstracted values.

    Notes
    -----
    An interval with ``lo > hi`` is Bottom and is stored as ``[+inf, -inf]``.
    """

    lo: Bound
    hi: Bound
    type: MachType

    def __post_init__(self):
        if self.lo > self.hi:
            object.__setattr__(self, "lo", INF)
            object.__setattr__(self, "hi", -INF)

    # construction

    @classmethod
    def top(cls, mach_type: MachType) -> "IntInterval":
        return cls(-INF, INF, mach_type)

    @classmethod
    def bottom(cls, mach_type: MachType) -> "IntInterval":
        return cls(INF, -INF, mach_type)

    @classmethod
    def const(cls, mach_type: MachType, value: int) -> "IntInterval":
        return cls(value, value, mach_type)

    @classmethod
    def from_range(
        cls, mach_type: MachType, lo: Bound, hi: Bound, wrap_exact: bool = False
    ) -> "IntInterval":
        """Abstract the integers of ``[lo, hi]`` as values of ``mach_type``.

        Parameters
        ----------
        mach_type : MachType
            Result type.
        lo, hi : int or float
            Bounds of a mathematical range.
        wrap_exact : bool, optional
            Whether to abstract the range after wraparound into the type
            (conversion semantics). When ``False``, a range leaving the type
            becomes ``[min, max]`` (overflow of an operation). The default
            is ``False``.
        """
        if lo > hi:
            return cls.bottom(mach_type)
        if lo in (-INF, INF) and hi in (-INF, INF):
            return cls.top(mach_type)
        if wrap_exact and lo != -INF and hi != INF:
            if hi - lo + 1 >= mach_type.modulus:
                return cls(mach_type.min, mach_type.max, mach_type)
            low, high = mach_type.wrap(lo), mach_type.wrap(hi)
            if low <= high:
                return cls(low, high, mach_type)
            return cls(mach_type.min, mach_type.max, mach_type)
        if (lo != -INF and lo < mach_type.min) or (hi != INF and hi > mach_type.max):
            return cls(mach_type.min, mach_type.max, mach_type)
        return cls(lo, hi, mach_type)

    @classmethod
    def from_pattern_range(cls, mach_type: MachType, lo: int, hi: int) -> "IntInterval":
        """Abstract the values whose unsigned bit patterns lie in ``[lo, hi]``."""
        if lo > hi:
            return cls.bottom(mach_type)
        if mach_type.signed and lo <= mach_type.max < hi:
            return cls(mach_type.min, mach_type.max, mach_type)
        return cls(mach_type.from_pattern(lo), mach_type.from_pattern(hi), mach_type)

    # queries

    def is_bottom(self) -> bool:
        return self.lo > self.hi

    def is_top(self) -> bool:
        return self.lo == -INF and self.hi == INF

    def value_ranges(self) -> typing.List[typing.Tuple[int, int]]:
        """Return the represented machine values as value-ordered integer ranges."""
        low = max(self.lo, self.type.min)
        high = min(self.hi, self.type.max)
        if low > high:
            return []
        return [(int(low), int(high))]

    def cardinality(self) -> int:
        return sum(high - low + 1 for low, high in self.value_ranges())

    def singleton(self) -> typing.Optional[int]:
        ranges = self.value_ranges()
        if len(ranges) == 1 and ranges[0][0] == ranges[0][1]:
            return ranges[0][0]
        return None

    def contains(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    def hull(self) -> typing.Tuple[int, int]:
        """Return the smallest and largest represented values (clamped to the type)."""
        ranges = self.value_ranges()
        return ranges[0][0], ranges[-1][1]

    # lattice

    def _check(self, other: "IntInterval"):
        if not isinstance(other, IntInterval) or other.type != self.type:
            raise DomainMismatchError(f"Cannot combine {self!r} with {other!r}.")

    def join(self, other: "IntInterval") -> "IntInterval":
        self._check(other)
        if self.is_bottom():
            return other
        if other.is_bottom():
            return self
        return IntInterval(min(self.lo, other.lo), max(self.hi, other.hi), self.type)

    def meet(self, other: "IntInterval") -> "IntInterval":
        self._check(other)
        return IntInterval(max(self.lo, other.lo), min(self.hi, other.hi), self.type)

    def contains_interval(self, other: "IntInterval") -> bool:
        """Check ``other ⊑ self``."""
        self._check(other)
        if other.is_bottom():
            return True
        return self.lo <= other.lo and other.hi <= self.hi

    def widen(self, new: "IntInterval") -> "IntInterval":
        """Extrapolate the bounds of ``new`` that moved past ``self``."""
        self._check(new)
        if self.is_bottom():
            return new
        if new.is_bottom():
            return self
        lower_moved = new.lo < self.lo
        upper_moved = new.hi > self.hi
        if lower_moved and upper_moved:
            return IntInterval.top(self.type)
        if upper_moved:
            return IntInterval(new.lo, INF, self.type)
        if lower_moved:
            return IntInterval(-INF, new.hi, self.type)
        return new

    def exclude_endpoint(self, value: int) -> "IntInterval":
        """Remove ``value`` when it is a bound of the represented values."""
        if self.is_bottom():
            return self
        low, high = self.hull()
        if low == value:
            return self.meet(IntInterval(value + 1, INF, self.type))
        if high == value:
            return self.meet(IntInterval(-INF, value - 1, self.type))
        return self

    # arithmetic, both operands of the result type

    def _operands(self, other):
        self._check(other)
        return self.hull(), other.hull()

    def _result(self, candidates) -> "IntInterval":
        return IntInterval.from_range(self.type, min(candidates), max(candidates))

    def add(self, other: "IntInterval") -> "IntInterval":
        if self.is_bottom() or other.is_bottom():
            return IntInterval.bottom(self.type)
        (a, b), (c, d) = self._operands(other)
        return self._result((a + c, b + d))

    def sub(self, other: "IntInterval") -> "IntInterval":
        if self.is_bottom() or other.is_bottom():
            return IntInterval.bottom(self.type)
        (a, b), (c, d) = self._operands(other)
        return self._result((a - d, b - c))

    def mul(self, other: "IntInterval") -> "IntInterval":
        if self.is_bottom() or other.is_bottom():
            return IntInterval.bottom(self.type)
        (a, b), (c, d) = self._operands(other)
        return self._result((a * c, a * d, b * c, b * d))

    def div(self, other: "IntInterval") -> "IntInterval":
        """Truncating division; top when the divisor may be zero."""
        if self.is_bottom() or other.is_bottom():
            return IntInterval.bottom(self.type)
        (a, b), (c, d) = self._operands(other)
        if c <= 0 <= d:
            return IntInterval.top(self.type)
        return self._result(
            (
                _truncating_div(a, c),
                _truncating_div(a, d),
                _truncating_div(b, c),
                _truncating_div(b, d),
            )
        )

    # output

    def to_json(self) -> dict:
        if self.is_bottom():
            return {"dom": "int", "lo": None, "hi": None, "bottom": True}
        return {
            "dom": "int",
            "lo": _bound_json(self.lo),
            "hi": _bound_json(self.hi),
            "bottom": False,
        }

    def __str__(self):
        if self.is_bottom():
            return "bottom"
        left = "(" if self.lo == -INF else "["
        right = ")" if self.hi == INF else "]"
        return f"{left}{_bound_text(self.lo)}, {_bound_text(self.hi)}{right}"
