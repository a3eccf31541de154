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

"""Three-valued truth of guards."""

import enum


class BoolInterval(enum.Enum):
    """Abstract truth value: ``[0, 0]``, ``[1, 1]``, ``[0, 1]`` or Bottom."""

    FALSE = "false"
    TRUE = "true"
    MAYBE = "maybe"
    BOTTOM = "bottom"

    @classmethod
    def of(cls, value: bool) -> "BoolInterval":
        return cls.TRUE if value else cls.FALSE

    @classmethod
    def of_interval(cls, interval) -> "BoolInterval":
        """Return the truth of a term whose values are ``interval`` (nonzero is true)."""
        if interval.is_bottom():
            return cls.BOTTOM
        has_zero = interval.contains(0)
        only_zero = interval.singleton() == 0
        if only_zero:
            return cls.FALSE
        return cls.MAYBE if has_zero else cls.TRUE

    def join(self, other: "BoolInterval") -> "BoolInterval":
        if self is BoolInterval.BOTTOM:
            return other
        if other is BoolInterval.BOTTOM or self is other:
            return self
        return BoolInterval.MAYBE

    def meet(self, other: "BoolInterval") -> "BoolInterval":
        if self is BoolInterval.MAYBE:
            return other
        if other is BoolInterval.MAYBE or self is other:
            return self
        return BoolInterval.BOTTOM

    def negate(self) -> "BoolInterval":
        if self is BoolInterval.TRUE:
            return BoolInterval.FALSE
        if self is BoolInterval.FALSE:
            return BoolInterval.TRUE
        return self

    def conjoin(self, other: "BoolInterval") -> "BoolInterval":
        """Truth of ``self && other``."""
        if BoolInterval.BOTTOM in (self, other):
            return BoolInterval.BOTTOM
        if BoolInterval.FALSE in (self, other):
            return BoolInterval.FALSE
        if self is BoolInterval.TRUE and other is BoolInterval.TRUE:
            return BoolInterval.TRUE
        return BoolInterval.MAYBE

    def to_interval(self, mach_type, domain):
        """Return the interval of ``mach_type`` in the class ``domain`` holding this truth value."""
        if self is BoolInterval.BOTTOM:
            return domain.bottom(mach_type)
        if self is BoolInterval.FALSE:
            return domain.const(mach_type, 0)
        if self is BoolInterval.TRUE:
            return domain.const(mach_type, mach_type.wrap(1))
        return domain.from_range(mach_type, 0, 1, wrap_exact=True)

    def __str__(self):
        return {
            BoolInterval.FALSE: "[0, 0]",
            BoolInterval.TRUE: "[1, 1]",
            BoolInterval.MAYBE: "[0, 1]",
            BoolInterval.BOTTOM: "bottom",
        }[self]
