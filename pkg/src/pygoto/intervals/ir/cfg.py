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

"""Control-flow queries over programs.

Statement indices are the nodes of the control-flow graph. Statement 1 is
the entry; falling off the last statement ends the program.
"""

from collections import deque
from dataclasses import dataclass
import typing

from pygoto.intervals.ir.types import (
    Assignment,
    IfThenGoto,
    Label,
    Program,
    Stmt,
    stmt_expr,
    variables,
)


def flatten(program: Program) -> typing.Tuple[typing.List[Stmt], typing.Dict[str, int]]:
    """Return the statement list and the label map of a program.

    The list is in source order (position ``i - 1`` holds statement ``i``)
    and the map sends every label to the index of its ``Label`` statement.
    """
    labels = {
        stmt.name: index
        for index, stmt in enumerate(program.stmts, start=1)
        if isinstance(stmt, Label)
    }
    return list(program.stmts), labels


def successors(program: Program, index: int) -> typing.Set[int]:
    """Return the indices control can reach right after statement ``index``."""
    stmt = program[index]
    result = set()
    if index < len(program):
        result.add(index + 1)
    if isinstance(stmt, IfThenGoto):
        result.add(program.target(stmt))
    return result


def predecessors(program: Program) -> typing.Dict[int, typing.Set[int]]:
    """Return the predecessor sets of every statement."""
    preds = {index: set() for index in program.indices()}
    for index in program.indices():
        for succ in successors(program, index):
            preds[succ].add(index)
    return preds


def reachable(program: Program) -> typing.Set[int]:
    """Return the statements reachable from the entry."""
    if not len(program):
        return set()
    seen = {1}
    queue = deque([1])
    while queue:
        for succ in successors(program, queue.popleft()):
            if succ not in seen:
                seen.add(succ)
                queue.append(succ)
    return seen


def dominators(program: Program) -> typing.Dict[int, typing.Set[int]]:
    """Return the dominator set of every reachable statement.

    Iterative data-flow formulation: ``dom(1) = {1}`` and for any other
    statement the intersection of its reachable predecessors' sets plus
    itself.
    """
    nodes = reachable(program)
    if not nodes:
        return {}
    preds = predecessors(program)
    dom = {node: set(nodes) for node in nodes}
    dom[1] = {1}
    changed = True
    while changed:
        changed = False
        for node in sorted(nodes - {1}):
            incoming = [dom[pred] for pred in preds[node] if pred in nodes]
            new = set.intersection(*incoming) | {node} if incoming else {node}
            if new != dom[node]:
                dom[node] = new
                changed = True
    return dom


@dataclass(frozen=True)
class Loop:
    """A natural loop found from one back edge.

    Attributes
    ----------
    head : int
        Index of the jump target (a ``Label`` statement).
    source : int
        Index of the jump closing the loop.
    body : frozenset of int
        Indices on paths from ``head`` to ``source``, both included.
    """

    head: int
    source: int
    body: typing.FrozenSet[int]


def detect_loops(program: Program) -> typing.List[Loop]:
    """Return one loop per back edge, in source order of the back edges.

    A back edge is a conditional jump whose target index is smaller than its
    own index.
    """
    preds = predecessors(program)
    loops = []
    for index in program.indices():
        stmt = program[index]
        if not isinstance(stmt, IfThenGoto):
            continue
        head = program.target(stmt)
        if head >= index:
            continue
        body = {head, index}
        stack = [index]
        while stack:
            node = stack.pop()
            for pred in preds[node]:
                if pred not in body and head <= pred <= index:
                    body.add(pred)
                    stack.append(pred)
        loops.append(Loop(head, index, frozenset(body)))
    return loops


def is_reducible(program: Program) -> bool:
    """Check that every reachable back edge's head dominates its source."""
    dom = dominators(program)
    return all(
        loop.head in dom[loop.source] for loop in detect_loops(program) if loop.source in dom
    )


def loop_exits(program: Program, loop: Loop) -> typing.List[typing.Tuple[int, int]]:
    """Return the edges leaving a loop body, as ``(source, target)`` pairs."""
    exits = []
    for node in sorted(loop.body):
        for succ in sorted(successors(program, node)):
            if succ not in loop.body:
                exits.append((node, succ))
    return exits


def assigned_variables(program: Program, indices: typing.Iterable[int]) -> typing.List[str]:
    """Return the variables assigned by the given statements, in declaration order."""
    targets = {
        program[index].target for index in indices if isinstance(program[index], Assignment)
    }
    return [name for name in program.symbols if name in targets]


def live_on_entry(program: Program) -> typing.Set[str]:
    """Return the variables whose initial value may be read.

    Backward liveness: ``live_in(s) = uses(s) | (live_out(s) - defs(s))``,
    iterated to a fixed point.
    """
    if not len(program):
        return set()
    live_in = {index: set() for index in program.indices()}
    changed = True
    while changed:
        changed = False
        for index in reversed(program.indices()):
            stmt = program[index]
            out = set()
            for succ in successors(program, index):
                out |= live_in[succ]
            expr = stmt_expr(stmt)
            uses = set(variables(expr)) if expr is not None else set()
            if isinstance(stmt, Assignment):
                out.discard(stmt.target)
            new = uses | out
            if new != live_in[index]:
                live_in[index] = new
                changed = True
    return live_in[1]
