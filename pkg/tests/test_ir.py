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

"""Testing of the GOTO data model, parser, printer and control-flow queries."""

import pytest

from pygoto.intervals.errors import GotoSyntaxError, ProgramValidationError
from pygoto.intervals.examples import list_examples, load_example
from pygoto.intervals.ir import (
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
    Var,
    assigned_variables,
    common_type,
    detect_loops,
    dominators,
    emit_program,
    expr_type,
    flatten,
    is_reducible,
    live_on_entry,
    loop_exits,
    parse_file,
    parse_program,
    predecessors,
    reachable,
    successors,
)

S8 = MachType(True, 8)
U8 = MachType(False, 8)
S4 = MachType(True, 4)


def test_mach_type_ranges():
    assert (S8.min, S8.max) == (-128, 127)
    assert (U8.min, U8.max) == (0, 255)
    assert MachType(False, 1).max == 1
    assert MachType(True, 64).min == -(2**63)
    assert str(MachType.parse("u16")) == "u16"


@pytest.mark.parametrize("text", ["s0", "u65", "i8", "s", "8"])
def test_mach_type_invalid(text):
    with pytest.raises(ValueError):
        MachType.parse(text)


def test_mach_type_wrap():
    assert S4.wrap(8) == -8
    assert S4.wrap(-9) == 7
    assert MachType(False, 4).wrap(-1) == 15
    assert S8.to_pattern(-1) == 255
    assert S8.from_pattern(128) == -128


def test_common_type():
    assert common_type(S8, S8) == S8
    assert common_type(S8, MachType(True, 16)) == MachType(True, 16)
    assert common_type(S8, U8) == U8


def test_const_out_of_range():
    with pytest.raises(ProgramValidationError):
        Const(128, S8)


def test_parse_counter_loop(counter_loop):
    assert dict(counter_loop.symbols) == {"x": S8}
    assert len(counter_loop) == 7
    assert counter_loop[1] == Assignment("x", Const(0, S8))
    assert counter_loop[2] == Label("L1")
    assert counter_loop[3] == IfThenGoto(BinOp(BinaryOperator.LE, Const(100, S8), Var("x")), "L2")
    assert counter_loop[4] == Assignment("x", BinOp(BinaryOperator.ADD, Var("x"), Const(1, S8)))
    assert counter_loop[5].is_unconditional
    assert counter_loop[7] == Assert(BinOp(BinaryOperator.LE, Const(51, S8), Var("x")))
    assert counter_loop.label_index == {"L1": 2, "L2": 6}
    assert counter_loop.target(counter_loop[5]) == 2


def test_parse_indices_are_one_based(counter_loop):
    assert list(counter_loop.indices()) == list(range(1, 8))
    with pytest.raises(IndexError):
        counter_loop[0]
    with pytest.raises(IndexError):
        counter_loop[8]


def test_parse_unary_and_cast():
    program = parse_program(
        "decl x : s8\ndecl u : u8\n  u := (u8) x\n  x := ~x\n  assume !u\n  skip\n"
    )
    assert program[1] == Assignment("u", Cast(U8, Var("x")))
    assert program[2] == Assignment("x", BitNot(Var("x")))
    assert program[3] == Assumption(Not(Var("u")))
    assert program[4] == Skip()


def test_parse_typed_literal():
    program = parse_program("decl x : s8\n  assume x <= 3:u4\n")
    assert program[1].expr.right == Const(3, MachType(False, 4))


def test_parse_negative_literal():
    program = parse_program("decl x : s8\n  x := x + -5\n  assume -3 <= x\n")
    assert program[1].expr.right == Const(-5, S8)
    assert program[2].expr.left == Const(-3, S8)


def test_parse_strict_comparison_sugar():
    program = parse_program("decl x : s8\n  assume x < 10\n  assume x > 2\n  assume x >= 1\n")
    assert program[1].expr == BinOp(BinaryOperator.LE, Var("x"), Const(9, S8))
    assert program[2].expr == BinOp(BinaryOperator.LE, Const(3, S8), Var("x"))
    assert program[3].expr == BinOp(BinaryOperator.LE, Const(1, S8), Var("x"))


def test_parse_strict_comparison_at_type_limit():
    program = parse_program("decl x : s8\n  assume x < -128\n")
    assert program[1].expr == Const(0, BOOL_TYPE)


def test_parse_comments_and_blank_lines():
    program = parse_program("# header\n\ndecl x : u8  # counter\n\n  x := 1 # set\n")
    assert len(program) == 1


def test_parse_nested_expression_rejected():
    with pytest.raises(GotoSyntaxError) as error:
        parse_program("decl x : s8\n  x := x + x + 1\n")
    assert error.value.line == 2
    assert "three-address" in str(error.value)


@pytest.mark.parametrize(
    "text",
    [
        "decl x : s8\n  y := 1\n",
        "decl x : s8\ndecl x : u8\n",
        "decl x : s8\nL:\nL:\n",
        "decl x : s8\n  goto M\n",
        "decl x : s8\n  x := 300\n",
    ],
)
def test_parse_validation_errors(text):
    with pytest.raises(ProgramValidationError):
        parse_program(text)


@pytest.mark.parametrize(
    "text",
    [
        "decl x : s8\n  x = 1\n",
        "decl x : s8\n  assert\n",
        "decl x : s8\n  x := $\n",
        "decl x s8\n",
        "decl x : s8\n  if x goto\n",
        "decl goto : s8\n",
    ],
)
def test_parse_syntax_errors(text):
    with pytest.raises(GotoSyntaxError):
        parse_program(text)


def test_syntax_error_location():
    with pytest.raises(GotoSyntaxError) as error:
        parse_program("decl x : s8\n  x := $\n")
    assert error.value.line == 2
    assert error.value.column == 8
    assert str(error.value).startswith("line 2, column 8:")


def test_parse_file(tmp_path):
    path = tmp_path / "small.goto"
    path.write_text("decl x : u4\n  x := 15\n", encoding="utf-8")
    assert len(parse_file(path)) == 1


def test_program_build_validates():
    with pytest.raises(ProgramValidationError):
        Program.build({"x": S8}, [IfThenGoto(Const(1, BOOL_TYPE), "nowhere")])
    with pytest.raises(ProgramValidationError):
        Program.build({"x": S8}, [Assignment("y", Var("x"))])


def test_expr_type():
    symbols = {"x": S8, "u": U8}
    assert expr_type(BinOp(BinaryOperator.ADD, Var("x"), Var("u")), symbols) == U8
    assert expr_type(BinOp(BinaryOperator.LE, Var("x"), Var("u")), symbols) == BOOL_TYPE
    assert expr_type(BinOp(BinaryOperator.SHL, Var("x"), Var("u")), symbols) == S8
    assert expr_type(Cast(U8, Var("x")), symbols) == U8


@pytest.mark.parametrize("name", list_examples())
def test_emit_program_round_trip(name):
    program = load_example(name)
    assert parse_program(emit_program(program)) == program


def test_emit_program_typed_literals():
    program = parse_program("decl x : s8\n  assume x <= 3:u4\n  x := 3:u4\n")
    text = emit_program(program)
    assert "3:u4" in text
    assert parse_program(text) == program


def test_emit_program_annotations(counter_loop):
    text = emit_program(counter_loop, annotations=lambda index: f"stmt {index}")
    lines = text.splitlines()
    assert lines[0] == "decl x : s8"
    assert lines[1].startswith("  x := 0")
    assert lines[1].endswith("# stmt 1")
    assert lines[2].startswith("L1:")


def test_flatten(counter_loop):
    stmts, labels = flatten(counter_loop)
    assert len(stmts) == 7
    assert labels == {"L1": 2, "L2": 6}


def test_successors_and_predecessors(counter_loop):
    assert successors(counter_loop, 3) == {4, 6}
    assert successors(counter_loop, 5) == {2, 6}
    assert successors(counter_loop, 7) == set()
    assert predecessors(counter_loop)[2] == {1, 5}


def test_reachable_keeps_fallthrough_of_goto():
    # unconditional jumps keep their fall-through edge, the analysis prunes it
    program = parse_program("decl x : s8\n  goto L\n  x := 5\nL:\n  skip\n")
    assert successors(program, 1) == {2, 3}
    assert reachable(program) == {1, 2, 3, 4}
    assert reachable(parse_program("decl x : s8\n")) == set()


def test_dominators(counter_loop):
    dom = dominators(counter_loop)
    assert dom[1] == {1}
    assert dom[4] == {1, 2, 3, 4}
    assert dom[7] == {1, 2, 3, 6, 7}


def test_detect_loops(counter_loop):
    loops = detect_loops(counter_loop)
    assert len(loops) == 1
    loop = loops[0]
    assert (loop.head, loop.source) == (2, 5)
    assert loop.body == {2, 3, 4, 5}
    assert loop_exits(counter_loop, loop) == [(3, 6), (5, 6)]
    assert assigned_variables(counter_loop, loop.body) == ["x"]
    assert is_reducible(counter_loop)


def test_irreducible_loop():
    program = parse_program(
        "decl c : u1\n"
        "  if c goto B\n"
        "A:\n"
        "  skip\n"
        "B:\n"
        "  if c goto A\n"
    )
    assert not is_reducible(program)


def test_live_on_entry(counter_loop, diamond, wrap_program):
    assert live_on_entry(counter_loop) == set()
    assert live_on_entry(diamond) == {"c"}
    assert live_on_entry(wrap_program) == {"x"}
