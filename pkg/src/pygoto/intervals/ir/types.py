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

"""Data model of the GOTO intermediate language.

A :class:`Program` is a typed symbol table, a flat list of statements and a
label index. Expressions are three-address: every operand is a :data:`Term`,
that is a :class:`Var` or a typed :class:`Const`.
"""

from dataclasses import dataclass, field
import enum
import re
from types import MappingProxyType
import typing

from pygoto.intervals.errors import ProgramValidationError

MAX_WIDTH = 64
"""Widest supported machine type, in bits."""

_TYPE_RE = re.compile(r"^([su])(\d+)$")


@dataclass(frozen=True, order=True)
class MachType:
    """Machine integer type.

    Parameters
    ----------
    signed : bool
        Whether the type uses two's-complement signed values.
    width : int
        Number of bits, between 1 and 64.
    """

    signed: bool
    width: int

    def __post_init__(self):
        if not isinstance(self.width, int) or not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"Type width must be between 1 and {MAX_WIDTH}, got {self.width}.")

    @classmethod
    def parse(cls, text: str) -> "MachType":
        """Parse a type name such as ``s32`` or ``u8``."""
        match = _TYPE_RE.match(text.strip())
        if not match:
            raise ValueError(f"'{text}' is not a type name (expected s<width> or u<width>).")
        return cls(match.group(1) == "s", int(match.group(2)))

    @property
    def modulus(self) -> int:
        return 1 << self.width

    @property
    def mask(self) -> int:
        return self.modulus - 1

    @property
    def min(self) -> int:
        return -(1 << (self.width - 1)) if self.signed else 0

    @property
    def max(self) -> int:
        return (1 << (self.width - 1)) - 1 if self.signed else self.mask

    def contains(self, value: int) -> bool:
        """Check whether ``value`` lies in the range of the type."""
        return self.min <= value <= self.max

    def wrap(self, value: int) -> int:
        """Reduce an integer into the range of the type (two's-complement wraparound)."""
        pattern = value & self.mask
        if self.signed and pattern > self.max:
            return pattern - self.modulus
        return pattern

    def to_pattern(self, value: int) -> int:
        """Return the unsigned bit pattern of a value of this type."""
        return value & self.mask

    def from_pattern(self, pattern: int) -> int:
        """Return the value of this type whose bit pattern is ``pattern``."""
        return self.wrap(pattern)

    def __str__(self):
        return f"{'s' if self.signed else 'u'}{self.width}"


BOOL_TYPE = MachType(True, 32)
"""Type of comparison and boolean results (C ``int``)."""


def common_type(left: MachType, right: MachType) -> MachType:
    """Return the type both operands are converted to before a binary operation.

    Identical types are kept. Otherwise the wider type wins and, for equal
    widths, the unsigned type wins.
    """
    if left == right:
        return left
    if left.width != right.width:
        return left if left.width > right.width else right
    return MachType(False, left.width)


@dataclass(frozen=True)
class Var:
    """Variable operand."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    """Typed constant operand."""

    value: int
    type: MachType

    def __post_init__(self):
        if not self.type.contains(self.value):
            raise ProgramValidationError(
                f"Constant {self.value} is out of the range of {self.type} "
                f"[{self.type.min}, {self.type.max}]."
            )

    def __str__(self):
        return str(self.value)


Term = typing.Union[Var, Const]


class BinaryOperator(str, enum.Enum):
    """Binary operators of the language."""

    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    SHL = "<<"
    SHR = ">>"
    AND = "&"
    OR = "|"
    XOR = "^"
    LAND = "&&"
    LE = "<="

    @property
    def is_arithmetic(self) -> bool:
        return self in ARITHMETIC_OPERATORS

    @property
    def is_bitwise(self) -> bool:
        return self in BITWISE_OPERATORS

    @property
    def is_shift(self) -> bool:
        return self in (BinaryOperator.SHL, BinaryOperator.SHR)

    @property
    def is_boolean(self) -> bool:
        return self in (BinaryOperator.LAND, BinaryOperator.LE)


ARITHMETIC_OPERATORS = frozenset(
    {BinaryOperator.ADD, BinaryOperator.SUB, BinaryOperator.MUL, BinaryOperator.DIV}
)
"""Operators gated by the ``arithmetic`` precision flag."""

BITWISE_OPERATORS = frozenset(
    {
        BinaryOperator.SHL,
        BinaryOperator.SHR,
        BinaryOperator.AND,
        BinaryOperator.OR,
        BinaryOperator.XOR,
    }
)
"""Binary operators gated by the ``bitwise`` precision flag."""


@dataclass(frozen=True)
class BinOp:
    """``left op right``."""

    op: BinaryOperator
    left: Term
    right: Term

    def __str__(self):
        return f"{self.left} {self.op.value} {self.right}"


@dataclass(frozen=True)
class Not:
    """Logical negation ``!t``."""

    operand: Term

    def __str__(self):
        return f"!{self.operand}"


@dataclass(frozen=True)
class BitNot:
    """Bitwise complement ``~t``."""

    operand: Term

    def __str__(self):
        return f"~{self.operand}"


@dataclass(frozen=True)
class Cast:
    """Explicit conversion ``(type) t``."""

    type: MachType
    operand: Term

    def __str__(self):
        return f"({self.type}) {self.operand}"


Expr = typing.Union[Var, Const, BinOp, Not, BitNot, Cast]


def is_boolean(expr: Expr) -> bool:
    """Check whether an expression yields a truth value (0 or 1)."""
    return isinstance(expr, Not) or (isinstance(expr, BinOp) and expr.op.is_boolean)


def operands(expr: Expr) -> typing.Tuple[Term, ...]:
    """Return the terms an expression reads."""
    if isinstance(expr, (Var, Const)):
        return (expr,)
    if isinstance(expr, BinOp):
        return (expr.left, expr.right)
    return (expr.operand,)


def variables(expr: Expr) -> typing.List[str]:
    """Return the names of the variables an expression reads, without duplicates."""
    names = []
    for term in operands(expr):
        if isinstance(term, Var) and term.name not in names:
            names.append(term.name)
    return names


def term_type(term: Term, symbols: typing.Mapping[str, MachType]) -> MachType:
    if isinstance(term, Const):
        return term.type
    return symbols[term.name]


def expr_type(expr: Expr, symbols: typing.Mapping[str, MachType]) -> MachType:
    """Return the type of the value an expression computes."""
    if isinstance(expr, (Var, Const)):
        return term_type(expr, symbols)
    if isinstance(expr, Cast):
        return expr.type
    if isinstance(expr, BitNot):
        return term_type(expr.operand, symbols)
    if isinstance(expr, Not) or expr.op.is_boolean:
        return BOOL_TYPE
    if expr.op.is_shift:
        return term_type(expr.left, symbols)
    return common_type(term_type(expr.left, symbols), term_type(expr.right, symbols))


def literal_context(
    other: typing.Optional[Term],
    symbols: typing.Mapping[str, MachType],
    target: typing.Optional[MachType] = None,
) -> MachType:
    """Return the type an untyped literal takes in its position.

    The type of the other operand when that operand is a variable, else the
    assignment target's type when given, else ``s32``.
    """
    if isinstance(other, Var) and other.name in symbols:
        return symbols[other.name]
    if target is not None:
        return target
    return BOOL_TYPE


def expected_literal_types(
    expr: Expr,
    symbols: typing.Mapping[str, MachType],
    target: typing.Optional[MachType] = None,
) -> typing.Tuple[MachType, ...]:
    """Return, per operand of ``expr``, the type an untyped literal there would take.

    ``target`` is the assignment target's type and only applies to a lone
    literal right-hand side. The parser and the printer share this rule so
    printed programs parse back to equal programs.
    """
    if isinstance(expr, (Var, Const)):
        return (target or BOOL_TYPE,)
    if isinstance(expr, BinOp):
        return (literal_context(expr.right, symbols), literal_context(expr.left, symbols))
    return (BOOL_TYPE,)


@dataclass(frozen=True)
class Assignment:
    target: str
    expr: Expr

    def __str__(self):
        return f"{self.target} := {self.expr}"


@dataclass(frozen=True)
class Assumption:
    expr: Expr

    def __str__(self):
        return f"assume {self.expr}"


@dataclass(frozen=True)
class Assert:
    expr: Expr

    def __str__(self):
        return f"assert {self.expr}"


@dataclass(frozen=True)
class IfThenGoto:
    cond: Expr
    label: str

    @property
    def is_unconditional(self) -> bool:
        return isinstance(self.cond, Const) and self.cond == Const(1, BOOL_TYPE)

    def __str__(self):
        if self.is_unconditional:
            return f"goto {self.label}"
        return f"if {self.cond} goto {self.label}"


@dataclass(frozen=True)
class Label:
    name: str

    def __str__(self):
        return f"{self.name}:"


@dataclass(frozen=True)
class Skip:
    def __str__(self):
        return "skip"


Stmt = typing.Union[Assignment, Assumption, Assert, IfThenGoto, Label, Skip]


def stmt_expr(stmt: Stmt) -> typing.Optional[Expr]:
    """Return the expression a statement evaluates, if any."""
    if isinstance(stmt, IfThenGoto):
        return stmt.cond
    return getattr(stmt, "expr", None)


def with_expr(stmt: Stmt, expr: Expr) -> Stmt:
    """Return a copy of ``stmt`` evaluating ``expr`` instead."""
    if isinstance(stmt, Assignment):
        return Assignment(stmt.target, expr)
    if isinstance(stmt, Assumption):
        return Assumption(expr)
    if isinstance(stmt, Assert):
        return Assert(expr)
    if isinstance(stmt, IfThenGoto):
        return IfThenGoto(expr, stmt.label)
    raise TypeError(f"{type(stmt).__name__} statements have no expression.")


@dataclass(frozen=True)
class Program:
    """Validated GOTO program.

    Statement indices are 1-based: ``program[1]`` is the first statement.
    Build programs with :meth:`Program.build`, which validates them.
    """

    symbols: typing.Mapping[str, MachType]
    stmts: typing.Tuple[Stmt, ...]
    label_index: typing.Mapping[str, int] = field(compare=False)

    @classmethod
    def build(
        cls, symbols: typing.Mapping[str, MachType], stmts: typing.Iterable[Stmt]
    ) -> "Program":
        """Validate statements against a symbol table and build a program.

        Raises
        ------
        ProgramValidationError
            On undeclared variables, duplicate labels or unresolved goto targets.
        """
        stmts = tuple(stmts)
        labels = {}
        for index, stmt in enumerate(stmts, start=1):
            if isinstance(stmt, Label):
                if stmt.name in labels:
                    raise ProgramValidationError(f"Duplicate label '{stmt.name}'.")
                labels[stmt.name] = index
        for stmt in stmts:
            if isinstance(stmt, IfThenGoto) and stmt.label not in labels:
                raise ProgramValidationError(f"Unresolved goto target '{stmt.label}'.")
            names = list(variables(stmt_expr(stmt))) if stmt_expr(stmt) is not None else []
            if isinstance(stmt, Assignment):
                names.append(stmt.target)
            for name in names:
                if name not in symbols:
                    raise ProgramValidationError(f"Undeclared variable '{name}'.")
        return cls(MappingProxyType(dict(symbols)), stmts, MappingProxyType(labels))

    def __len__(self):
        return len(self.stmts)

    def __getitem__(self, index: int) -> Stmt:
        if not 1 <= index <= len(self.stmts):
            raise IndexError(f"Statement index {index} is out of range 1..{len(self.stmts)}.")
        return self.stmts[index - 1]

    def indices(self) -> range:
        """Return the range of valid statement indices."""
        return range(1, len(self.stmts) + 1)

    def target(self, stmt: IfThenGoto) -> int:
        """Return the index of the label a branch jumps to."""
        return self.label_index[stmt.label]

    def replace(self, stmts: typing.Iterable[Stmt]) -> "Program":
        """Return a program with the same symbols and new statements."""
        return Program.build(self.symbols, stmts)
