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

import os
import pathlib
import random

from hypothesis import HealthCheck, settings
import pytest

from pygoto.intervals import examples
from pygoto.intervals.ir import MachType, parse_program
from pygoto.intervals.misc import env_int
import pygoto.intervals.run

# to run tests with multiple markers
# pytest -q --collect-only -m "cli"
# pytest -q --collect-only -m "oracle and not soundness"
# pytest -m soundness
#
# The size of the soundness sweeps is read from the environment:
# PYGOTO_FUZZ_PROGRAMS=500 PYGOTO_FUZZ_ENVS=256 PYGOTO_RANDOM_SEED=7 pytest -m soundness

FUZZ_PROGRAMS = env_int("PYGOTO_FUZZ_PROGRAMS", 200)
FUZZ_ENVS = env_int("PYGOTO_FUZZ_ENVS", 64)
RANDOM_SEED = env_int("PYGOTO_RANDOM_SEED", 20240601)

settings.register_profile(
    "pygoto",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("soundness", max_examples=2000, deadline=None)
settings.load_profile(os.environ.get("PYGOTO_HYPOTHESIS_PROFILE", "pygoto"))


def pytest_collection_modifyitems(config, items):
    keywordexpr = config.option.keyword
    markexpr = config.option.markexpr
    if keywordexpr or markexpr:
        return  # command line has a -k or -m, let pytest handle it

    # skip the full-size sweeps unless the mark is specified
    skip_soundness = pytest.mark.skip(
        reason="""soundness not selected for pytest run
        (`pytest -m soundness`).  Skip by default"""
    )
    [item.add_marker(skip_soundness) for item in items if "soundness" in item.keywords]


@pytest.fixture()
def rootdir():
    """Return the root directory of the local clone of the repository."""
    base = pathlib.Path(__file__).parent
    yield base.parent


@pytest.fixture()
def disable_cli():
    pygoto.intervals.run.DRY_RUN = True
    yield
    pygoto.intervals.run.DRY_RUN = False


@pytest.fixture()
def counter_loop():
    """Counting loop whose exit guard bounds ``x``."""
    return examples.load_example("counter_loop")


@pytest.fixture()
def diamond():
    """Diamond leaving ``a`` in ``[4, 6]``."""
    return examples.load_example("diamond")


@pytest.fixture()
def wrap_program():
    """``x + 1`` overflowing a 4-bit signed counter."""
    return examples.load_example("wrap")


@pytest.fixture()
def goto_file(tmp_path):
    """Write GOTO source text to a file and return its path."""

    def func(text, name="program.goto"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return func


@pytest.fixture()
def rng():
    return random.Random(RANDOM_SEED)


_TYPES = [MachType(True, 4), MachType(False, 4), MachType(True, 3), MachType(False, 3)]
_OPERATORS = ["+", "-", "*", "&", "|", "^"]


def random_program(rng, n_vars=2, n_stmts=8, loop=True):
    """Generate a small random program over narrow types.

    The statements sit in a bounded countdown loop so that every concrete
    run terminates. With ``loop=False`` they run once and every jump goes
    forward.
    """
    names = [f"v{i}" for i in range(n_vars)]
    types = {name: rng.choice(_TYPES) for name in names}
    lines = [f"decl {name} : {mach_type}" for name, mach_type in types.items()]
    if loop:
        lines.append("decl n : u3")
        lines.append("  n := 3")
        lines.append("L0:")
    label = 0
    for _ in range(n_stmts):
        kind = rng.random()
        target = rng.choice(names)
        other = rng.choice(names)
        mach_type = types[target]
        constant = rng.randint(max(mach_type.min, -3), min(mach_type.max, 3))
        if kind < 0.45:
            if types[other] == mach_type:
                op = rng.choice(_OPERATORS)
                lines.append(f"  {target} := {other} {op} {constant}")
            else:
                lines.append(f"  {target} := ({mach_type}) {other}")
        elif kind < 0.6:
            lines.append(f"  assume {constant} <= {target}")
        elif kind < 0.8:
            lines.append(f"  assert {target} <= {constant}")
        else:
            label += 1
            lines.append(f"  if {target} <= {constant} goto F{label}")
            lines.append(f"  {target} := {target} + 1")
            lines.append(f"F{label}:")
    if loop:
        lines.append("  if n <= 0 goto END")
        lines.append("  n := n - 1")
        lines.append("  goto L0")
        lines.append("END:")
    lines.append(f"  assert {names[0]} <= {rng.randint(0, 3)}")
    return parse_program("\n".join(lines) + "\n")


@pytest.fixture()
def program_factory(rng):
    """Return a generator of random programs seeded from ``PYGOTO_RANDOM_SEED``."""

    def func(n_vars=2, n_stmts=8, loop=True):
        return random_program(rng, n_vars, n_stmts, loop)

    return func
