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

"""Work-list abstract interpreter."""

from collections import deque
from dataclasses import asdict, dataclass
import enum
import time
import typing

from pygoto.intervals import LOG
from pygoto.intervals.absint.env import AbstractEnv
from pygoto.intervals.absint.storage import StorageMode, get_storage_mode, make_store
from pygoto.intervals.domains.config import DomainConfig
from pygoto.intervals.domains.evaluate import convert, eval_abs_expr, restrict
from pygoto.intervals.errors import AnalysisCapExceeded, protect_analysis
from pygoto.intervals.ir.cfg import successors
from pygoto.intervals.ir.types import (
    Assert,
    Assignment,
    Assumption,
    IfThenGoto,
    Label,
    Program,
    Skip,
    Stmt,
)

DEFAULT_ITERATION_CAP = 10**6

_PROGRESS_EVERY = 1000


class Edge(str, enum.Enum):
    """Control-flow edge leaving a statement."""

    FALLTHROUGH = "fallthrough"
    TAKEN = "taken"


def transform_stmt(
    env: AbstractEnv, stmt: Stmt, edge: typing.Union[Edge, str], config: DomainConfig
) -> AbstractEnv:
    """Apply the abstract effect of a statement along one of its edges.

    Parameters
    ----------
    env : AbstractEnv
        Entry state of the statement.
    stmt : Stmt
        Statement to apply.
    edge : Edge or str
        ``"taken"`` or ``"fallthrough"``. Only branches distinguish them.
    config : DomainConfig
        Precision settings.

    Returns
    -------
    AbstractEnv
        State on the edge. Bottom when ``env`` is Bottom or no state can
        follow the edge.

    Examples
    --------
    With ``x`` in ``[0, 100]``, the fall-through edge of
    ``if 100 <= x goto L2`` keeps ``x`` in ``[0, 99]`` and the taken edge
    binds it to ``[100, 100]``.
    """
    if env.is_bottom():
        return env
    if isinstance(stmt, Assignment):
        value = eval_abs_expr(stmt.expr, env, config)
        return env.set(stmt.target, convert(value, env.symbols[stmt.target]))
    if isinstance(stmt, (Assumption, Assert)):
        return restrict(stmt.expr, env, True, config)
    if isinstance(stmt, IfThenGoto):
        return restrict(stmt.cond, env, Edge(edge) is Edge.TAKEN, config)
    if isinstance(stmt, (Label, Skip)):
        return env
    raise TypeError(f"Unknown statement {stmt!r}.")


@dataclass
class AnalysisStats:
    """Counters of one fixed-point computation."""

    pops: int = 0
    merges: int = 0
    widenings: int = 0
    peak_tracked: int = 0
    interval_objects: int = 0
    env_records: int = 0
    wall_time: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        data = asdict(self)
        if not timings:
            del data["wall_time"]
        return data


class DomainMap:
    """Entry states computed for the statements of a program.

    Statements the analysis never reached have no entry; querying them
    returns Bottom.
    """

    def __init__(self, program: Program, config: DomainConfig, store, stats: AnalysisStats):
        self.program = program
        self.config = config
        self.mode = store.mode
        self.stats = stats
        self._store = store

    def __contains__(self, index: int) -> bool:
        return index in self._store

    def indices(self) -> typing.List[int]:
        """Return the indices of the reached statements."""
        return self._store.indices()

    def entry(self, index: int) -> AbstractEnv:
        """Return the entry state of statement ``index``."""
        if index not in self.program.indices():
            raise IndexError(f"Statement index {index} is out of range 1..{len(self.program)}.")
        env = self._store.get(index)
        if env is None:
            return AbstractEnv(self.program.symbols, self.config.domain, bottom=True)
        return env

    def exit(self, index: int, edge: typing.Union[Edge, str] = Edge.FALLTHROUGH) -> AbstractEnv:
        """Recompute the state leaving statement ``index`` along ``edge``."""
        return transform_stmt(self.entry(index), self.program[index], edge, self.config)

    def to_json(self) -> typing.List[dict]:
        """Serialize every statement's entry state, unreached ones as Bottom."""
        entries = []
        for index in self.program.indices():
            env = self.entry(index)
            bottom = env.is_bottom()
            entries.append(
                {"stmt": index, "env": {} if bottom else env.to_json(), "bottom": bottom}
            )
        return entries

    def __eq__(self, other):
        if not isinstance(other, DomainMap):
            return NotImplemented
        return self.program == other.program and all(
            self.entry(index) == other.entry(index) for index in self.program.indices()
        )

    def __repr__(self):
        return f"DomainMap({len(self.indices())} of {len(self.program)} statements)"


def _edges(program: Program, index: int, succ: int) -> typing.List[Edge]:
    stmt = program[index]
    if not isinstance(stmt, IfThenGoto):
        return [Edge.FALLTHROUGH]
    edges = []
    if succ == index + 1:
        edges.append(Edge.FALLTHROUGH)
    if succ == program.target(stmt):
        edges.append(Edge.TAKEN)
    return edges


@protect_analysis
def compute_abs(
    program: Program,
    config: DomainConfig,
    mode: typing.Optional[typing.Union[StorageMode, str]] = None,
    *,
    iteration_cap: int = DEFAULT_ITERATION_CAP,
    time_budget: typing.Optional[float] = None,
    schedule: str = "fifo",
    name: typing.Optional[str] = None,
) -> DomainMap:
    """Compute the entry state of every reachable statement.

    Parameters
    ----------
    program : Program
        Program to analyze.
    config : DomainConfig
        Domain and precision settings.
    mode : StorageMode or str, optional
        Storage of the states. The default is the mode selected with
        :func:`set_storage_mode`.
    iteration_cap : int, optional
        Maximum number of work-list pops. The default is ``10**6``.
    time_budget : float, optional
        Maximum wall-clock time in seconds. The default is ``None``, no limit.
    schedule : str, optional
        ``"fifo"`` or ``"lifo"`` order of the work list. The default is
        ``"fifo"``.
    name : str, optional
        Program name attached to the log records.

    Returns
    -------
    DomainMap
        Fixed point of the analysis.

    Raises
    ------
    AnalysisCapExceeded
        When the pop count or the time budget is exhausted. Without widening
        this happens on loops that iterate through a large range.

    Examples
    --------
    >>> from pygoto.intervals import DomainConfig, compute_abs, load_example
    >>> domain_map = compute_abs(load_example("counter_loop"), DomainConfig())
    >>> str(domain_map.entry(7).get("x"))
    '[100, 100]'
    """
    if schedule not in ("fifo", "lifo"):
        raise ValueError(f"Unknown schedule '{schedule}'. Use 'fifo' or 'lifo'.")
    log = LOG.program_adapter(name or "<program>")
    store = make_store(mode or get_storage_mode(), program.symbols, config.domain)
    stats = AnalysisStats()
    started = time.perf_counter()
    if not len(program):
        return DomainMap(program, config, store, stats)

    store.put(1, AbstractEnv.initial(program.symbols, config.domain))
    work = deque([1])
    queued = {1}
    tracked = {1: 0}
    total_tracked = 0
    pop = work.popleft if schedule == "fifo" else work.pop
    log.debug(f"Analyzing {len(program)} statements with {config.label()}.")

    while work:
        if stats.pops >= iteration_cap:
            log.error(f"Iteration cap of {iteration_cap} pops reached.")
            raise AnalysisCapExceeded(
                f"Analysis did not converge within {iteration_cap} pops.", pops=stats.pops
            )
        if time_budget is not None and time.perf_counter() - started > time_budget:
            log.error(f"Time budget of {time_budget} s exhausted after {stats.pops} pops.")
            raise AnalysisCapExceeded(
                f"Analysis exceeded its time budget of {time_budget} s.", pops=stats.pops
            )
        index = pop()
        queued.discard(index)
        stats.pops += 1
        if stats.pops % _PROGRESS_EVERY == 0:
            log.debug(f"{stats.pops} pops, {len(work)} statements queued.")

        state = store.get(index)
        stmt = program[index]
        for succ in sorted(successors(program, index)):
            new_state = state.to_bottom()
            for edge in _edges(program, index, succ):
                new_state = new_state.join(transform_stmt(state, stmt, edge, config))
            if new_state.is_bottom():
                continue
            old_state = store.get(succ)
            if old_state is None or old_state.is_bottom():
                merged = new_state
            else:
                merged = old_state.join(new_state)
                if merged == old_state:
                    continue
                stats.merges += 1
                if config.widening:
                    merged = old_state.widen(merged)
                    stats.widenings += 1
                    log.debug(f"Widened statement {succ}: {merged.annotation()}.")
            store.put(succ, merged)
            total_tracked += merged.tracked() - tracked.get(succ, 0)
            tracked[succ] = merged.tracked()
            stats.peak_tracked = max(stats.peak_tracked, total_tracked)
            if succ not in queued:
                work.append(succ)
                queued.add(succ)

    stats.interval_objects = store.interval_objects
    stats.env_records = store.env_records
    stats.wall_time = time.perf_counter() - started
    log.debug(f"Fixed point reached after {stats.pops} pops.")
    return DomainMap(program, config, store, stats)
