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

"""Printer for the textual GOTO format."""

import typing

from pygoto.intervals.ir.types import (
    Assert,
    Assignment,
    Assumption,
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
    Stmt,
    Term,
    expected_literal_types,
)

ANNOTATION_COLUMN = 32
"""Column at which interval annotations start, when the statement is shorter."""


def _term(term: Term, expected: MachType) -> str:
    if isinstance(term, Const) and term.type != expected:
        return f"{term.value}:{term.type}"
    return str(term)


def emit_expr(
    expr: Expr,
    symbols: typing.Mapping[str, MachType],
    target: typing.Optional[MachType] = None,
) -> str:
    """Render an expression, adding type suffixes only to literals that need them."""
    expected = expected_literal_types(expr, symbols, target)
    if isinstance(expr, BinOp):
        left = _term(expr.left, expected[0])
        right = _term(expr.right, expected[1])
        return f"{left} {expr.op.value} {right}"
    if isinstance(expr, Not):
        return f"!{_term(expr.operand, expected[0])}"
    if isinstance(expr, BitNot):
        return f"~{_term(expr.operand, expected[0])}"
    if isinstance(expr, Cast):
        return f"({expr.type}) {_term(expr.operand, expected[0])}"
    return _term(expr, expected[0])


def emit_stmt(stmt: Stmt, symbols: typing.Mapping[str, MachType]) -> str:
    """Render one statement on one line."""
    if isinstance(stmt, Assignment):
        return f"{stmt.target} := {emit_expr(stmt.expr, symbols, symbols[stmt.target])}"
    if isinstance(stmt, IfThenGoto):
        if stmt.is_unconditional:
            return f"goto {stmt.label}"
        return f"if {emit_expr(stmt.cond, symbols)} goto {stmt.label}"
    if isinstance(stmt, Label):
        return f"{stmt.name}:"
    if isinstance(stmt, Assumption):
        return f"assume {emit_expr(stmt.expr, symbols)}"
    if isinstance(stmt, Assert):
        return f"assert {emit_expr(stmt.expr, symbols)}"
    return str(stmt)


def emit_program(
    program: Program,
    annotations: typing.Optional[typing.Callable[[int], str]] = None,
) -> str:
    """Render a program in the textual GOTO format.

    Parameters
    ----------
    program : Program
        Program to print.
    annotations : callable, optional
        Function from a statement index to a comment text. When given, every
        statement line ends with ``# <text>``.

    Returns
    -------
    str
        Program text that :func:`parse_program` reads back to an equal program.
    """
    lines = [f"decl {name} : {mach_type}" for name, mach_type in program.symbols.items()]
    for index in program.indices():
        stmt = program[index]
        line = emit_stmt(stmt, program.symbols)
        if not isinstance(stmt, Label):
            line = "  " + line
        if annotations is not None:
            line = f"{line.ljust(ANNOTATION_COLUMN)}  # {annotations(index)}"
        lines.append(line)
    return "\n".join(lines) + "\n"
