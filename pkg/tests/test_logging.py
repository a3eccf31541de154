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

"""Testing of the log module."""
import logging as deflogging
import os

import pytest

from pygoto.intervals import LOG
from pygoto.intervals import logging
from pygoto.intervals.absint import compute_abs
from pygoto.intervals.domains import DomainConfig

LOG_LEVELS = {
    "CRITICAL": 50,
    "ERROR": 40,
    "WARNING": 30,
    "INFO": 20,
    "DEBUG": 10,
}


def fake_record(handler, msg="This is a message", level=deflogging.DEBUG, extra=None):
    """Format a record with ``handler`` the way it would be written."""
    record = LOG.logger.makeRecord(
        LOG.logger.name, level, "fn", 0, msg, args=(), exc_info=None, extra=extra
    )
    handler.filter(record)
    return handler.format(record)


@pytest.fixture()
def reset_level():
    yield
    LOG.setLevel("ERROR")


@pytest.fixture()
def log_file(tmpdir):
    """Attach a file handler to the global logger and detach it afterwards."""
    file_path = os.path.join(tmpdir, "pygoto.log")
    LOG.log_to_file(file_path)
    yield file_path
    LOG.stop_logging_to_file()
    LOG.setLevel("ERROR")


def _read(file_path):
    with open(file_path, "r", encoding="utf-8") as fid:
        return fid.read()


def test_global_logger_exist():
    assert isinstance(LOG.logger, deflogging.Logger)
    assert LOG.logger.name == "pygoto_global"
    assert LOG.stream_handler in LOG.logger.handlers
    assert LOG.file_handler is None


def test_global_logger_default_level():
    assert LOG.logger.level == deflogging.ERROR
    assert LOG.level == deflogging.ERROR


def test_global_logger_logging(caplog, reset_level):
    LOG.setLevel("DEBUG")
    for each_log_name, each_log_number in LOG_LEVELS.items():
        msg = f"This is an {each_log_name} message."
        LOG.log(each_log_number, msg)
        assert caplog.record_tuples[-1] == ("pygoto_global", each_log_number, msg)


@pytest.mark.parametrize("level", list(LOG_LEVELS.values()))
def test_global_logger_levels(caplog, level):
    with caplog.at_level(level, LOG.logger.name):
        for each_log_name, each_log_number in LOG_LEVELS.items():
            msg = f"This is an {each_log_name} message at level {level}."
            LOG.logger.log(each_log_number, msg)
            if each_log_number >= level:
                assert caplog.record_tuples[-1] == ("pygoto_global", each_log_number, msg)
            else:
                assert msg not in caplog.text


@pytest.mark.parametrize("level", ["debug", "Info", "WARN", "warning", "ERROR", "critical"])
def test_set_level_accepts_names(level, reset_level):
    LOG.setLevel(level)
    expected = logging._to_level(level)
    assert LOG.level == expected
    assert all(handler.level == expected for handler in LOG.logger.handlers)


def test_record_format():
    text = fake_record(LOG.stream_handler, extra={"program_name": "diamond"})
    assert text.startswith("DEBUG - diamond - ")
    assert text.endswith("This is a message")


def test_record_format_without_program_name():
    assert fake_record(LOG.stream_handler, msg="plain").startswith("DEBUG -  - ")


def test_log_to_file(log_file):
    LOG.error("This is a error message")
    LOG.debug("This is a debug message")

    text = _read(log_file)
    assert "NEW SESSION" in text
    assert logging.FILE_HEADER in text
    assert "ERROR -  - test_logging - test_log_to_file - This is a error message" in text
    assert "This is a debug message" not in text

    LOG.setLevel("DEBUG")
    LOG.debug("This debug message should be recorded.")
    assert "This debug message should be recorded." in _read(log_file)


def test_log_to_file_replaces_handler(tmpdir, log_file):
    first = LOG.file_handler
    LOG.log_to_file(os.path.join(tmpdir, "second.log"), level="WARNING")
    assert first not in LOG.logger.handlers
    assert first.stream is None
    assert LOG.file_handler.level == deflogging.WARNING


def test_stop_logging_to_file_without_handler():
    LOG.stop_logging_to_file()
    assert LOG.file_handler is None


def test_child_logger():
    child = LOG.add_child_logger("testing_child")
    assert child.name == "pygoto_global.testing_child"
    assert LOG.add_child_logger("testing_child") is child
    assert child.propagate
    assert child.getEffectiveLevel() == LOG.level


def test_program_adapter(caplog, reset_level):
    LOG.setLevel("INFO")
    adapter = LOG.program_adapter("wrap", suffix="pipeline")
    assert adapter.logger.name == "pygoto_global.pipeline"
    adapter.info("Parsed 4 statements.", extra={"stage": "parse"})
    record = caplog.records[-1]
    assert record.program_name == "wrap"
    assert record.stage == "parse"
    assert record.name == "pygoto_global.pipeline"


def test_analysis_records(counter_loop, log_file):
    LOG.setLevel("DEBUG")
    compute_abs(counter_loop, DomainConfig(widening=True), name="counter_loop")

    text = _read(log_file)
    assert "DEBUG - counter_loop - interpreter - compute_abs - Widened statement" in text
    assert "Fixed point reached" in text
