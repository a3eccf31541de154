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

"""GOTO intermediate language: data model, text format and control-flow queries."""

from pygoto.intervals.ir.cfg import (
    Loop,
    assigned_variables,
    detect_loops,
    dominators,
    flatten,
    is_reducible,
    live_on_entry,
    loop_exits,
    predecessors,
    reachable,
    successors,
)
from pygoto.intervals.ir.parser import parse_file, parse_program
from pygoto.intervals.ir.printer import emit_expr, emit_program, emit_stmt
from pygoto.intervals.ir.types import (
    BOOL_TYPE,
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
    Label,
    MachType,
    Not,
    Program,
    Skip,
    Stmt,
    Term,
    Var,
    common_type,
    expr_type,
)
