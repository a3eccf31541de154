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

"""Wrapped interval domain.

A :class:`WrapInterval` ``<s, e>`` is an arc on the ring of ``w``-bit
patterns: the patterns met going clockwise (incrementing modulo ``2**w``)
from ``s`` to ``e``. Arcs may wrap around the type boundary, so modular
overflow is represented without losing the result. The full ring is stored
as ``<0, 2**w - 1>``.

Joins pick the smallest covering arc. When two covers have the same size,
the one whose start pattern is smaller wins, so results do not depend on
the order of the operands.
"""

from dataclasses import dataclass
import math
import typing

from pygoto.intervals.errors import DomainMismatchError
from pygoto.intervals.ir.types import MachType


def _truncating_div(a: int, b: int) -> int:
    quotient = abs(a) // abs(b)
    return quotient if (a < 0) == (b < 0) else -quotient


@dataclass(frozen=True)
class WrapInterval:
    """Arc of bit patterns of the wrapped domain.

    Parameters
    ----------
    start : int
        First pattern of the arc, in ``[0, 2**w)``.
    end : int
        Last pattern of the arc, in ``[0, 2**w)``.
    type : MachType
        Type of the abstracted values.
    empty : bool, optional
        Whether the interval is Bottom. The default is ``False``.
    """

    start: int
    end: int
    type: MachType
    empty: bool = False

    def __post_init__(self):
        mask = self.type.mask
        if self.empty:
            object.__setattr__(self, "start", 0)
            object.__setattr__(self, "end", 0)
        elif (self.end - self.start) & mask == mask:
            object.__setattr__(self, "start", 0)
            object.__setattr__(self, "end", mask)
        else:
            object.__setattr__(self, "start", self.start & mask)
            object.__setattr__(self, "end", self.end & mask)

    # construction

    @classmethod
    def top(cls, mach_type: MachType) -> "WrapInterval":
        return cls(0, mach_type.mask, mach_type)

    @classmethod
    def bottom(cls, mach_type: MachType) -> "WrapInterval":
        return cls(0, 0, mach_type, empty=True)

    @classmethod
    def const(cls, mach_type: MachType, value: int) -> "WrapInterval":
        pattern = mach_type.to_pattern(value)
        return cls(pattern, pattern, mach_type)

    @classmethod
    def from_range(
        cls, mach_type: MachType, lo, hi, wrap_exact: bool = True
    ) -> "WrapInterval":
        """Abstract the integers of ``[lo, hi]`` after wraparound into ``mach_type``.

        The wrapped domain always has modulo semantics, so ``wrap_exact``
        is accepted for symmetry with the integer domain and ignored.
        """
        if lo > hi:
            return cls.bottom(mach_type)
        if lo == -math.inf or hi == math.inf or hi - lo + 1 >= mach_type.modulus:
            return cls.top(mach_type)
        return cls(mach_type.to_pattern(lo), mach_type.to_pattern(hi), mach_type)

    @classmethod
    def from_pattern_range(cls, mach_type: MachType, lo: int, hi: int) -> "WrapInterval":
        """Abstract the values whose unsigned bit patterns lie in ``[lo, hi]``."""
        if lo > hi:
            return cls.bottom(mach_type)
        return cls(lo, hi, mach_type)

    # queries

    def is_bottom(self) -> bool:
        return self.empty

    def is_top(self) -> bool:
        return not self.empty and self.start == 0 and self.end == self.type.mask

    def cardinality(self) -> int:
        if self.empty:
            return 0
        return ((self.end - self.start) & self.type.mask) + 1

    def _offset(self, pattern: int) -> int:
        return (pattern - self.start) & self.type.mask

    def _has_pattern(self, pattern: int) -> bool:
        return not self.empty and self._offset(pattern) <= self._offset(self.end)

    def contains(self, value: int) -> bool:
        return self._has_pattern(self.type.to_pattern(value))

    def singleton(self) -> typing.Optional[int]:
        if self.empty or self.start != self.end:
            return None
        return self.type.from_pattern(self.start)

    def value_ranges(self) -> typing.List[typing.Tuple[int, int]]:
        """Return the represented values as at most two value-ordered ranges."""
        if self.empty:
            return []
        if self.is_top():
            return [(self.type.min, self.type.max)]
        low = self.type.from_pattern(self.start)
        high = self.type.from_pattern(self.end)
        if low <= high:
            return [(low, high)]
        return [(self.type.min, high), (low, self.type.max)]

    def hull(self) -> typing.Tuple[int, int]:
        """Return the smallest and largest represented values."""
        ranges = self.value_ranges()
        return ranges[0][0], ranges[-1][1]

    def _linear_pieces(self) -> typing.List[typing.Tuple[int, int]]:
        if self.empty:
            return []
        if self.start <= self.end:
            return [(self.start, self.end)]
        return [(0, self.end), (self.start, self.type.mask)]

    # lattice

    def _check(self, other: "WrapInterval"):
        if not isinstance(other, WrapInterval) or other.type != self.type:
            raise DomainMismatchError(f"Cannot combine {self!r} with {other!r}.")

    def contains_interval(self, other: "WrapInterval") -> bool:
        """Check ``other ⊑ self``."""
        self._check(other)
        if other.empty or self.is_top():
            return True
        if self.empty or other.cardinality() > self.cardinality():
            return False
        first = self._offset(other.start)
        last = self._offset(other.end)
        return first <= last <= self._offset(self.end)

    def join(self, other: "WrapInterval") -> "WrapInterval":
        self._check(other)
        if self.empty:
            return other
        if other.empty:
            return self
        mach_type = self.type
        candidates = [
            self,
            other,
            WrapInterval(self.start, other.end, mach_type),
            WrapInterval(other.start, self.end, mach_type),
            WrapInterval.top(mach_type),
        ]
        covers = [
            arc
            for arc in candidates
            if arc.contains_interval(self) and arc.contains_interval(other)
        ]
        return min(covers, key=lambda arc: (arc.cardinality(), arc.start))

    def meet(self, other: "WrapInterval") -> "WrapInterval":
        """Return the smallest arc covering the intersection of two arcs."""
        self._check(other)
        if self.empty or other.empty:
            return WrapInterval.bottom(self.type)
        if self.is_top():
            return other
        if other.is_top():
            return self
        pieces = []
        for lo_a, hi_a in self._linear_pieces():
            for lo_b, hi_b in other._linear_pieces():
                lo, hi = max(lo_a, lo_b), min(hi_a, hi_b)
                if lo <= hi:
                    pieces.append((lo, hi))
        pieces.sort()
        if not pieces:
            return WrapInterval.bottom(self.type)
        mask = self.type.mask
        if len(pieces) > 1 and pieces[0][0] == 0 and pieces[-1][1] == mask:
            first = pieces.pop(0)
            last = pieces.pop()
            pieces.append((last[0], first[1]))
        arcs = [WrapInterval(lo, hi, self.type) for lo, hi in pieces]
        result = arcs[0]
        for arc in arcs[1:]:
            result = result.join(arc)
        return result

    def widen(self, new: "WrapInterval") -> "WrapInterval":
        """Grow ``self`` clockwise to at least twice its size plus ``new``.

        When the arc anchored at ``self.start`` does not cover ``new``, the
        join of both is extended by ``|self|`` on each side instead. The
        result saturates at the full ring.
        """
        self._check(new)
        if self.empty:
            return new
        if self.contains_interval(new):
            return self
        mach_type = self.type
        size = self.cardinality()
        grown = min(2 * size + new.cardinality(), mach_type.modulus)
        if grown == mach_type.modulus:
            return WrapInterval.top(mach_type)
        candidate = WrapInterval(self.start, self.start + grown - 1, mach_type)
        if candidate.contains_interval(new):
            return candidate
        joined = self.join(new)
        if joined.cardinality() + 2 * size >= mach_type.modulus:
            return WrapInterval.top(mach_type)
        return WrapInterval(joined.start - size, joined.end + size, mach_type)

    def exclude_endpoint(self, value: int) -> "WrapInterval":
        """Remove ``value`` when it is an end of the arc."""
        if self.empty:
            return self
        pattern = self.type.to_pattern(value)
        if self.start == self.end == pattern:
            return WrapInterval.bottom(self.type)
        if self.is_top():
            return WrapInterval(pattern + 1, pattern - 1, self.type)
        if self.start == pattern:
            return WrapInterval(pattern + 1, self.end, self.type)
        if self.end == pattern:
            return WrapInterval(self.start, pattern - 1, self.type)
        return self

    # arithmetic, both operands of the result type

    def add(self, other: "WrapInterval") -> "WrapInterval":
        self._check(other)
        if self.empty or other.empty:
            return WrapInterval.bottom(self.type)
        if self.cardinality() + other.cardinality() > self.type.modulus:
            return WrapInterval.top(self.type)
        return WrapInterval(self.start + other.start, self.end + other.end, self.type)

    def sub(self, other: "WrapInterval") -> "WrapInterval":
        self._check(other)
        if self.empty or other.empty:
            return WrapInterval.bottom(self.type)
        if self.cardinality() + other.cardinality() > self.type.modulus:
            return WrapInterval.top(self.type)
        return WrapInterval(self.start - other.end, self.end - other.start, self.type)

    def _join_ranges(self, ranges) -> "WrapInterval":
        result = WrapInterval.bottom(self.type)
        for lo, hi in ranges:
            result = result.join(WrapInterval.from_range(self.type, lo, hi))
        return result

    def _unsigned_pieces(self):
        return self._linear_pieces()

    def _signed_pieces(self):
        half = 1 << (self.type.width - 1)
        pieces = []
        # rotate so the linear split happens at the sign boundary
        for lo, hi in self._rotated_pieces(half):
            pieces.append((lo - half, hi - half))
        return pieces

    def _rotated_pieces(self, shift: int):
        mask = self.type.mask
        start = (self.start + shift) & mask
        end = (self.end + shift) & mask
        if self.is_top():
            return [(0, mask)]
        if start <= end:
            return [(start, end)]
        return [(0, end), (start, mask)]

    def mul(self, other: "WrapInterval") -> "WrapInterval":
        """Multiply, keeping the smaller of the unsigned and signed readings.

        Multiplication modulo ``2**w`` does not depend on signedness, so both
        readings are sound.
        """
        self._check(other)
        if self.empty or other.empty:
            return WrapInterval.bottom(self.type)
        unsigned = self._join_ranges(
            (a * c, b * d)
            for a, b in self._unsigned_pieces()
            for c, d in other._unsigned_pieces()
        )
        signed = self._join_ranges(
            (min(products), max(products))
            for a, b in self._signed_pieces()
            for c, d in other._signed_pieces()
            for products in [(a * c, a * d, b * c, b * d)]
        )
        return min((unsigned, signed), key=lambda arc: (arc.cardinality(), arc.start))

    def div(self, other: "WrapInterval") -> "WrapInterval":
        """Truncating division over value pieces, divisor split around zero."""
        self._check(other)
        if self.empty or other.empty:
            return WrapInterval.bottom(self.type)
        divisors = []
        for c, d in other.value_ranges():
            if c <= -1:
                divisors.append((c, min(d, -1)))
            if d >= 1:
                divisors.append((max(c, 1), d))
        if not divisors:
            return WrapInterval.top(self.type)
        ranges = []
        for a, b in self.value_ranges():
            for c, d in divisors:
                quotients = [
                    _truncating_div(a, c),
                    _truncating_div(a, d),
                    _truncating_div(b, c),
                    _truncating_div(b, d),
                ]
                ranges.append((min(quotients), max(quotients)))
        return self._join_ranges(ranges)

    # output

    def to_json(self) -> dict:
        if self.empty:
            return {"dom": "wrap", "lo": None, "hi": None, "bottom": True}
        return {
            "dom": "wrap",
            "lo": self.type.from_pattern(self.start),
            "hi": self.type.from_pattern(self.end),
            "bottom": False,
        }

    def __str__(self):
        if self.empty:
            return "bottom"
        low = self.type.from_pattern(self.start)
        high = self.type.from_pattern(self.end)
        return f"<{low}, {high}>"

