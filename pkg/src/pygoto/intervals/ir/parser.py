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

"""Parser for the textual GOTO format.

The format is line oriented::

    # comment
    decl x : s32
    x := 0
    L1: if 100 <= x goto L2
    x := x + 1
    goto L1
    L2: assert 51 <= x

See the format reference in the documentation for the full token set.
"""

from dataclasses import dataclass
import re
import typing

from pygoto.intervals import LOG as logger
from pygoto.intervals.errors import GotoSyntaxError, ProgramValidationError
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
    IfThenGoto,
    Label,
    MachType,
    Not,
    Program,
    Skip,
    Stmt,
    Var,
    expected_literal_types,
)

KEYWORDS = frozenset({"decl", "assume", "assert", "if", "goto", "skip"})
"""Reserved words that cannot name variables or labels."""

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
    |(?P<num>\d+(?::[su]\d+)?)
    |(?P<name>[A-Za-z_]\w*)
    |(?P<op><<|>>|<=|>=|&&|:=|≤|≥|[-+*/&|^!~()<>:])
    """,
    re.VERBOSE,
)
_LABEL_RE = re.compile(r"^\s*([A-Za-z_]\w*)\s*:(?!=)")
_TYPE_NAME_RE = re.compile(r"^[su]\d+$")

_BINARY = {op.value: op for op in BinaryOperator}
_SUGAR = {"<", ">", ">=", "≥"}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    column: int


@dataclass(frozen=True)
class _Literal:
    """Integer literal whose type may still depend on its context."""

    value: int
    type: typing.Optional[MachType]
    column: int


def _tokenize(text: str, line: int, offset: int) -> typing.List[_Token]:
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if not match:
            raise GotoSyntaxError(
                f"Unexpected character '{text[position]}'", line, offset + position + 1
            )
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, match.group(), offset + position + 1))
        position = match.end()
    return _merge_negative_literals(tokens)


def _merge_negative_literals(tokens: typing.List[_Token]) -> typing.List[_Token]:
    merged = []
    for token in tokens:
        previous = merged[-1] if merged else None
        before = merged[-2] if len(merged) > 1 else None
        if (
            token.kind == "num"
            and previous is not None
            and previous.text == "-"
            and previous.column + 1 == token.column
            and (before is None or before.kind == "op" or before.text in KEYWORDS)
        ):
            merged[-1] = _Token("num", "-" + token.text, previous.column)
        else:
            merged.append(token)
    return merged


class _LineParser:
    """Parses the statements of one source line."""

    def __init__(self, symbols: typing.Mapping[str, MachType], line: int):
        self.symbols = symbols
        self.line = line

    def error(self, msg, column=None, cls=GotoSyntaxError):
        return cls(msg, self.line, column)

    def term(self, token: _Token):
        if token.kind == "num":
            value, _, suffix = token.text.partition(":")
            literal_type = None
            if suffix:
                literal_type = self.type_name(_Token("name", suffix, token.column))
            return _Literal(int(value), literal_type, token.column)
        if token.kind == "name":
            if token.text in KEYWORDS:
                raise self.error(f"Keyword '{token.text}' used as a term", token.column)
            if token.text not in self.symbols:
                raise self.error(
                    f"Undeclared variable '{token.text}'", token.column, ProgramValidationError
                )
            return Var(token.text)
        raise self.error(f"Expected a variable or a constant, found '{token.text}'", token.column)

    def type_name(self, token: _Token) -> MachType:
        if token.kind != "name" or not _TYPE_NAME_RE.match(token.text):
            raise self.error(f"'{token.text}' is not a type name", token.column)
        try:
            return MachType.parse(token.text)
        except ValueError as error:
            raise self.error(str(error), token.column, ProgramValidationError) from None

    def typed(self, term, context: MachType):
        if not isinstance(term, _Literal):
            return term
        literal_type = term.type or context
        if not literal_type.contains(term.value):
            raise self.error(
                f"Constant {term.value} is out of the range of {literal_type}",
                term.column,
                ProgramValidationError,
            )
        return Const(term.value, literal_type)

    def expr(self, tokens: typing.List[_Token], target: typing.Optional[MachType] = None):
        if not tokens:
            raise self.error("Missing expression")
        texts = [token.text for token in tokens]
        if len(tokens) == 1:
            term = self.term(tokens[0])
            return self.typed(term, target or BOOL_TYPE)
        if len(tokens) == 2 and texts[0] in ("!", "~"):
            operand = self.typed(self.term(tokens[1]), BOOL_TYPE)
            return Not(operand) if texts[0] == "!" else BitNot(operand)
        if len(tokens) == 4 and texts[0] == "(" and texts[2] == ")":
            return Cast(self.type_name(tokens[1]), self.typed(self.term(tokens[3]), BOOL_TYPE))
        if len(tokens) == 3 and tokens[1].kind == "op":
            return self.binary(tokens)
        operators = [token for token in tokens if token.kind == "op"]
        if len(operators) > 1 or len(tokens) > 3:
            raise self.error(
                "Nested expression; expressions must be three-address "
                "(introduce an intermediate variable)",
                tokens[0].column,
            )
        raise self.error(f"Malformed expression '{' '.join(texts)}'", tokens[0].column)

    def binary(self, tokens: typing.List[_Token]):
        left, op, right = self.term(tokens[0]), tokens[1].text, self.term(tokens[2])
        if op == "≤":
            op = "<="
        if op in _SUGAR:
            return self.comparison_sugar(left, op, right, tokens[1].column)
        if op not in _BINARY:
            raise self.error(f"Unknown operator '{op}'", tokens[1].column)
        shape = BinOp(_BINARY[op], _placeholder(left), _placeholder(right))
        left_context, right_context = expected_literal_types(shape, self.symbols)
        return BinOp(_BINARY[op], self.typed(left, left_context), self.typed(right, right_context))

    def comparison_sugar(self, left, op, right, column):
        if op in (">=", "≥"):
            return self.binary_terms(right, left)
        if op == ">":
            left, right = right, left
        # left < right
        if isinstance(right, _Literal):
            right = self.typed(right, _context_of(left, self.symbols))
            if right.value - 1 < right.type.min:
                return Const(0, BOOL_TYPE)
            return self.binary_terms(left, Const(right.value - 1, right.type))
        if isinstance(left, _Literal):
            left = self.typed(left, _context_of(right, self.symbols))
            if left.value + 1 > left.type.max:
                return Const(0, BOOL_TYPE)
            return self.binary_terms(Const(left.value + 1, left.type), right)
        raise self.error(
            "Strict comparison between two variables is not three-address; "
            "use '<=' with an intermediate variable",
            column,
        )

    def binary_terms(self, left, right):
        shape = BinOp(BinaryOperator.LE, _placeholder(left), _placeholder(right))
        left_context, right_context = expected_literal_types(shape, self.symbols)
        return BinOp(
            BinaryOperator.LE, self.typed(left, left_context), self.typed(right, right_context)
        )

    def label_name(self, token: _Token) -> str:
        if token.kind != "name" or token.text in KEYWORDS:
            raise self.error(f"'{token.text}' is not a label name", token.column)
        return token.text

    def statement(self, tokens: typing.List[_Token]) -> Stmt:
        head = tokens[0]
        if head.text == "skip":
            if len(tokens) > 1:
                raise self.error("Unexpected tokens after 'skip'", tokens[1].column)
            return Skip()
        if head.text == "assume":
            return Assumption(self.expr(tokens[1:]))
        if head.text == "assert":
            return Assert(self.expr(tokens[1:]))
        if head.text == "goto":
            if len(tokens) != 2:
                raise self.error("Expected 'goto <label>'", head.column)
            return IfThenGoto(Const(1, BOOL_TYPE), self.label_name(tokens[1]))
        if head.text == "if":
            texts = [token.text for token in tokens]
            if "goto" not in texts:
                raise self.error("Expected 'goto' in conditional jump", head.column)
            position = texts.index("goto")
            if position != len(tokens) - 2:
                raise self.error("Expected 'goto <label>'", tokens[position].column)
            return IfThenGoto(self.expr(tokens[1:position]), self.label_name(tokens[-1]))
        if len(tokens) >= 2 and tokens[1].text == ":=":
            target = self.term(head)
            if not isinstance(target, Var):
                raise self.error("Assignment target must be a variable", head.column)
            return Assignment(target.name, self.expr(tokens[2:], self.symbols[target.name]))
        raise self.error(f"Unknown statement starting with '{head.text}'", head.column)


def _placeholder(term):
    # literal positions are typed from the other operand only
    return Const(0, BOOL_TYPE) if isinstance(term, _Literal) else term


def _context_of(term, symbols) -> MachType:
    if isinstance(term, Var):
        return symbols[term.name]
    if isinstance(term, Const):
        return term.type
    return term.type or BOOL_TYPE


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _declarations(lines: typing.List[str]) -> typing.Dict[str, MachType]:
    symbols = {}
    for number, raw in enumerate(lines, start=1):
        text = _strip_comment(raw)
        tokens = _tokenize(text, number, 0)
        if not tokens or tokens[0].text != "decl":
            continue
        texts = [token.text for token in tokens]
        if len(tokens) != 4 or texts[2] != ":":
            raise GotoSyntaxError("Expected 'decl <name> : <type>'", number, tokens[0].column)
        name = tokens[1]
        if name.kind != "name" or name.text in KEYWORDS:
            raise GotoSyntaxError(f"'{name.text}' is not a variable name", number, name.column)
        if name.text in symbols:
            raise ProgramValidationError(
                f"Duplicate declaration of '{name.text}'", number, name.column
            )
        symbols[name.text] = _LineParser(symbols, number).type_name(tokens[3])
    return symbols


def parse_program(text: str) -> Program:
    """Parse GOTO source text into a validated program.

    Parameters
    ----------
    text : str
        Program source.

    Returns
    -------
    Program
        The parsed program.

    Raises
    ------
    GotoSyntaxError
        When the text is not well formed, including nested expressions.
    ProgramValidationError
        On undeclared variables, duplicate labels or declarations, unresolved
        goto targets and constants out of their declared range.

    Examples
    --------
    >>> program = parse_program("decl x : s32\\nx := 0")
    >>> len(program)
    1
    """
    lines = text.splitlines()
    symbols = _declarations(lines)
    stmts = []
    label_lines = {}
    jumps = []
    for number, raw in enumerate(lines, start=1):
        text_line = _strip_comment(raw)
        if not text_line.strip():
            continue
        offset = 0
        match = _LABEL_RE.match(text_line)
        if match and match.group(1) not in KEYWORDS:
            name = match.group(1)
            if name in label_lines:
                raise ProgramValidationError(
                    f"Duplicate label '{name}' (first defined on line {label_lines[name]})",
                    number,
                    match.start(1) + 1,
                )
            label_lines[name] = number
            stmts.append(Label(name))
            offset = match.end()
        tokens = _tokenize(text_line[offset:], number, offset)
        if not tokens or tokens[0].text == "decl":
            if tokens and offset:
                raise GotoSyntaxError("Declarations cannot be labelled", number, offset + 1)
            continue
        stmt = _LineParser(symbols, number).statement(tokens)
        if isinstance(stmt, IfThenGoto):
            jumps.append((stmt.label, number, tokens[-1].column))
        stmts.append(stmt)
    for label, number, column in jumps:
        if label not in label_lines:
            raise ProgramValidationError(f"Unresolved goto target '{label}'", number, column)
    program = Program.build(symbols, stmts)
    logger.debug(
        f"Parsed program with {len(program.symbols)} variables and {len(program)} statements."
    )
    return program


def parse_file(path) -> Program:
    """Read and parse a GOTO source file."""
    with open(path, encoding="utf-8") as stream:
        return parse_program(stream.read())
