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

"""Initialize the package level imports."""
import logging as _std_logging

from pygoto.intervals.logging import Logger

LOG = Logger(level=_std_logging.ERROR, to_file=False, to_stderr=True)
"""Create logger for package level use."""

LOG.debug("Loaded logging module as LOG")

from pygoto.intervals._version import __version__
from pygoto.intervals.absint import (
    AbstractEnv,
    DomainMap,
    StorageMode,
    compute_abs,
    measure_storage,
    set_storage_mode,
    transform_stmt,
)
from pygoto.intervals.concrete import (
    AllSafe,
    ConcreteEnv,
    Counterexample,
    Inconclusive,
    eval_program,
    exhaustive_check,
)
from pygoto.intervals.domains import (
    BoolInterval,
    DomainConfig,
    DomainKind,
    IntInterval,
    WrapInterval,
    all_configs,
)
from pygoto.intervals.examples import example_path, list_examples, load_example
from pygoto.intervals.ir import MachType, Program, emit_program, parse_file, parse_program
from pygoto.intervals.pool import EnumerationPool
from pygoto.intervals.transform import (
    AssertVerdict,
    InstrumentMode,
    assertion_report,
    instrument,
    remove_dead_code,
    singleton_propagate,
)
