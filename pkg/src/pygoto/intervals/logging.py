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

"""Logging of the analyses.

A single global logger named ``pygoto_global`` is created in
``pygoto.intervals.__init__``. Import it at the top of a module:

.. code:: python

   from pygoto.intervals import LOG as logger

Its level is ``ERROR`` by default. Lower it to see work-list progress and
widening events, and add a file handler to keep the records:

.. code:: python

   LOG.setLevel("DEBUG")
   LOG.log_to_file("analysis.log")

Analyses log through an adapter that tags every record with the name of
the analysed program:

.. code:: pycon

    >>> from pygoto.intervals import LOG
    >>> log = LOG.program_adapter("counter_loop")
    >>> log.debug("Fixed point reached after 12 pops.")

    DEBUG - counter_loop - interpreter - compute_abs - Fixed point reached after 12 pops.

Adapters of the same ``suffix`` share the child logger
``pygoto_global.<suffix>``, whose records reach the global handlers.
"""

from datetime import datetime
import logging
import sys
import typing

FILE_NAME = "pygoto.log"
"""Default log file name."""

MSG_FORMAT = "%(levelname)s - %(program_name)s - %(module)s - %(funcName)s - %(message)s"
"""Format of the records, on the standard error and in files."""

FILE_HEADER = "LEVEL - PROGRAM - MODULE - FUNCTION - MESSAGE\n"

_LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARN": logging.WARNING,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}


def _to_level(level: typing.Union[int, str]) -> int:
    if isinstance(level, str):
        return _LEVELS[level.upper()]
    return level


def _session_header() -> str:
    rule = "=" * 79
    return f"\n{rule}\n       NEW SESSION - {datetime.now():%m/%d/%Y, %H:%M:%S}\n{rule}\n"


class ProgramFilter(logging.Filter):
    """Gives records logged outside an analysis an empty ``program_name``."""

    def filter(self, record):
        if not hasattr(record, "program_name"):
            record.program_name = ""
        return True


class ProgramAdapter(logging.LoggerAdapter):
    """Adds the name of the analysed program to every record.

    Parameters
    ----------
    logger : logging.Logger
        Logger the records go to.
    program_name : str
        Name reported in the ``program_name`` field.
    """

    def __init__(self, logger: logging.Logger, program_name: str):
        super().__init__(logger, {"program_name": program_name})
        self.program_name = program_name

    def process(self, msg, kwargs):
        kwargs["extra"] = {**kwargs.get("extra", {}), "program_name": self.program_name}
        return msg, kwargs


def _handler(handler: logging.Handler, level: int) -> logging.Handler:
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(MSG_FORMAT))
    handler.addFilter(ProgramFilter())
    return handler


class Logger:
    """Owns the global logger and its handlers.

    Parameters
    ----------
    level : int or str, optional
        Level of the logger and of its handlers. The default is ``ERROR``.
    to_file : bool, optional
        Whether to write the records to ``filename``. The default is ``False``.
    to_stderr : bool, optional
        Whether to write the records to the standard error. The default is
        ``True``.
    filename : str, optional
        Log file used when ``to_file`` is set. The default is ``pygoto.log``.

    Examples
    --------
    >>> import os
    >>> from pygoto.intervals import LOG
    >>> LOG.log_to_file(os.path.join(os.getcwd(), "pygoto.log"))
    """

    def __init__(
        self,
        level: typing.Union[int, str] = logging.ERROR,
        to_file: bool = False,
        to_stderr: bool = True,
        filename: str = FILE_NAME,
    ):
        self.logger = logging.getLogger("pygoto_global")
        self.logger.setLevel(_to_level(level))
        self.file_handler: typing.Optional[logging.FileHandler] = None
        self.stream_handler: typing.Optional[logging.StreamHandler] = None

        self.debug = self.logger.debug
        self.info = self.logger.info
        self.warning = self.logger.warning
        self.error = self.logger.error
        self.critical = self.logger.critical
        self.log = self.logger.log

        if to_stderr:
            self.stream_handler = _handler(logging.StreamHandler(sys.stderr), self.level)
            self.logger.addHandler(self.stream_handler)
        if to_file:
            self.log_to_file(filename)

    @property
    def level(self) -> int:
        return self.logger.level

    def setLevel(self, level: typing.Union[int, str] = "DEBUG"):
        """Change the level of the global logger and of its handlers."""
        level = _to_level(level)
        self.logger.setLevel(level)
        for handler in self.logger.handlers:
            handler.setLevel(level)

    def log_to_file(
        self, filename: str = FILE_NAME, level: typing.Optional[typing.Union[int, str]] = None
    ):
        """Write the records to ``filename``, replacing any previous log file.

        Parameters
        ----------
        filename : str, optional
            Log file, opened in append mode. The default is ``pygoto.log``.
        level : int or str, optional
            Level of the file handler. The default is the logger's level.
        """
        self.stop_logging_to_file()
        handler = logging.FileHandler(filename, encoding="utf-8")
        _handler(handler, self.level if level is None else _to_level(level))
        handler.stream.write(_session_header())
        handler.stream.write(FILE_HEADER)
        self.file_handler = handler
        self.logger.addHandler(handler)

    def stop_logging_to_file(self):
        """Detach and close the file handler, if any."""
        if self.file_handler is None:
            return
        self.logger.removeHandler(self.file_handler)
        self.file_handler.close()
        self.file_handler = None

    def add_child_logger(self, suffix: str) -> logging.Logger:
        """Return the child logger ``pygoto_global.<suffix>``.

        Child loggers have no handlers of their own and inherit the global
        level.
        """
        return self.logger.getChild(suffix)

    def program_adapter(self, program_name: str, suffix: str = "analysis") -> ProgramAdapter:
        """Return an adapter tagging the records of ``suffix`` with ``program_name``."""
        return ProgramAdapter(self.add_child_logger(suffix), program_name or "")
