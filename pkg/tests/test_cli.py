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

import json
import os

from click.testing import CliRunner
import pytest

from pygoto.intervals import LOG
from pygoto.intervals._version import __version__
from pygoto.intervals.absint import StorageMode
from pygoto.intervals.domains import DomainKind
from pygoto.intervals.examples import example_path, list_examples
from pygoto.intervals.pipeline import Emit, Oracle, RunConfig
from pygoto.intervals.run import _cli_impl, _gate_impl, cli
from pygoto.intervals.transform import InstrumentMode


def _invoke(*args):
    return CliRunner().invoke(cli, [str(arg) for arg in args])


@pytest.mark.cli
def test_cli_default(disable_cli):
    config = _cli_impl(example_path("counter_loop"))
    assert isinstance(config, RunConfig)
    assert config.program_name == "counter_loop"
    assert config.domain.domain is DomainKind.INTEGER
    assert config.domain.arithmetic and config.domain.bitwise
    assert not config.domain.widening
    assert config.storage is StorageMode.SHARED_DOMAIN_COW
    assert config.instrument is InstrumentMode.NONE
    assert config.emit == (Emit.ANNOTATED,)
    assert config.oracle is Oracle.NONE


@pytest.mark.cli
def test_cli_no_emit_prints_annotated(disable_cli):
    config = _cli_impl(example_path("counter_loop"), emit=())
    assert config.emit == (Emit.ANNOTATED,)


@pytest.mark.cli
def test_cli_analysis_flags_override(disable_cli):
    config = _cli_impl(
        example_path("counter_loop"), widening=True, analysis_flags="Wrapped;Arithmetic"
    )
    assert config.domain.label() == "wrapped+arith"


@pytest.mark.cli
def test_cli_oracle_options(disable_cli):
    config = _cli_impl(
        example_path("wrap"), oracle="exhaustive", width_cap=4, step_limit=50, workers=3
    )
    assert config.oracle is Oracle.EXHAUSTIVE
    assert (config.width_cap, config.step_limit, config.workers) == (4, 50, 3)


@pytest.mark.cli
def test_cli_rejects_width_cap(disable_cli):
    with pytest.raises(ValueError):
        _cli_impl(example_path("counter_loop"), width_cap=0)


@pytest.mark.cli
def test_cli_gate_names(disable_cli):
    assert _gate_impl() == list_examples()
    assert _gate_impl(["diamond"]) == ["diamond"]


@pytest.mark.cli
def test_cli_version():
    result = _invoke("--version")
    assert result.exit_code == 0
    assert __version__ in result.output


@pytest.mark.cli
def test_cli_run_proven():
    result = _invoke("run", example_path("counter_loop"))
    assert result.exit_code == 0
    assert "# x : [100, 100]" in result.output


@pytest.mark.cli
def test_cli_run_refuted():
    result = _invoke("run", example_path("guard_refuted"))
    assert result.exit_code == 4


@pytest.mark.cli
def test_cli_run_counterexample():
    result = _invoke("run", example_path("wrap"), "--oracle", "exhaustive")
    assert result.exit_code == 4
    assert "Counterexample: x=7, t=0 fails the assertion at statement 3" in result.output


@pytest.mark.cli
def test_cli_run_syntax_error(goto_file):
    result = _invoke("run", goto_file("decl x : s8\n  x := \n"))
    assert result.exit_code == 1
    assert "Error:" in result.output
    assert "line 2" in result.output


@pytest.mark.cli
def test_cli_run_instrument_irreducible(goto_file):
    path = goto_file("decl c : u1\n  if c goto B\nA:\n  skip\nB:\n  skip\n  if c goto A\n")
    result = _invoke("run", path, "--instrument", "loop")
    assert result.exit_code == 1
    assert "reducible control-flow graph" in result.output
    assert "Invalid value" not in result.output


@pytest.mark.cli
def test_cli_run_missing_file(tmp_path):
    result = _invoke("run", tmp_path / "missing.goto")
    assert result.exit_code == 2


@pytest.mark.cli
def test_cli_run_iteration_cap():
    result = _invoke("run", example_path("counter_loop_1000"), "--iteration-cap", 100)
    assert result.exit_code == 2
    assert "100 pops" in result.output


@pytest.mark.cli
def test_cli_run_widening():
    result = _invoke("run", example_path("counter_loop_1000"), "--widening", "--iteration-cap", 100)
    assert result.exit_code == 0
    assert "[1000, 32767]" in result.output


@pytest.mark.cli
def test_cli_run_bad_width_cap():
    result = _invoke("run", example_path("counter_loop"), "--width-cap", 0)
    assert result.exit_code == 2
    assert "width" in result.output.lower()


@pytest.mark.cli
def test_cli_run_report_json():
    result = _invoke(
        "run", example_path("diamond"), "--emit", "report-json", "--storage", "full_copy"
    )
    assert result.exit_code == 0
    document = json.loads(result.output)
    assert document["program"] == "diamond"
    assert document["config"]["storage"] == "full_copy"


@pytest.mark.cli
def test_cli_run_log_file(tmp_path):
    file_path = str(tmp_path / "run.log")
    try:
        result = _invoke(
            "run",
            example_path("diamond"),
            "--optimize",
            "--emit",
            "optimized",
            "--log-level",
            "DEBUG",
            "--log-file",
            file_path,
        )
    finally:
        LOG.stop_logging_to_file()
        LOG.setLevel("ERROR")

    assert result.exit_code == 0
    assert os.path.isfile(file_path)
    with open(file_path, "r") as fid:
        assert "Folded 1 expressions." in fid.read()


@pytest.mark.cli
def test_cli_sweep():
    result = _invoke("sweep", example_path("counter_loop"))
    assert result.exit_code == 0
    rows = json.loads(result.output)
    assert len(rows) == 16
    assert rows[0]["config"] == "integer+arith+bitwise+widen"
    assert all(row["verdicts"]["proven"] == 1 for row in rows)


@pytest.mark.cli
@pytest.mark.oracle
def test_cli_gate():
    result = _invoke("gate", "diamond", "wrap")
    assert result.exit_code == 0
    entries = json.loads(result.output)
    assert [entry["program"] for entry in entries] == ["diamond", "wrap"]
    assert entries[1]["oracle"] == "counterexample"
