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

"""Interval domains: integer, wrapped and three-valued boolean."""

from pygoto.intervals.domains.bitwise import (
    best_or,
    bitwise_bounds,
    max_and,
    max_or,
    max_xor,
    min_and,
    min_or,
    min_xor,
    not_bounds,
)
from pygoto.intervals.domains.boolean import BoolInterval
from pygoto.intervals.domains.config import DomainConfig, DomainKind, all_configs
from pygoto.intervals.domains.evaluate import (
    Interval,
    contains,
    convert,
    eval_abs_cond,
    eval_abs_expr,
    init,
    interval_class,
    join,
    leq,
    may_fault,
    meet,
    restrict,
    singleton,
    widen,
)
from pygoto.intervals.domains.integer import IntInterval
from pygoto.intervals.domains.wrapped import WrapInterval
