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

"""Errors raised by pygoto-intervals."""

import enum
from functools import wraps

from pygoto.intervals import LOG as logger


class GotoSyntaxError(ValueError):
    """Raises an error when GOTO source text cannot be parsed."""

    def __init__(self, msg="Invalid GOTO program", line=None, column=None):
        """Initialize the syntax error.

        Parameters
        ----------
        msg : str
            Error message to display.
        line : int, optional
            1-based source line of the error.
        column : int, optional
            1-based source column of the error.
        """
        self.line = line
        self.column = column
        if line is not None:
            location = f"line {line}" if column is None else f"line {line}, column {column}"
            msg = f"{location}: {msg}"
        ValueError.__init__(self, msg)


class ProgramValidationError(GotoSyntaxError):
    """Raises an error when a program is well formed but invalid.

    Undeclared variables, duplicate labels, unresolved goto targets and
    constants outside their type are reported with this error.
    """

    pass


class DomainMismatchError(TypeError):
    """Raises an error when combining intervals of different types or domains."""

    def __init__(self, msg="Intervals belong to different types or domains"):
        TypeError.__init__(self, msg)


class UnboundVariableError(KeyError):
    """Raises an error when an environment is queried for an undeclared variable."""

    pass


class AnalysisCapExceeded(RuntimeError):
    """Raises an error when the abstract interpreter exhausts its budget."""

    def __init__(self, msg="Analysis budget exhausted", pops=None):
        """Initialize the cap error.

        Parameters
        ----------
        msg : str
            Error message to display.
        pops : int, optional
            Number of work-list pops performed before stopping.
        """
        self.pops = pops
        RuntimeError.__init__(self, msg)


class WidthCapExceeded(ValueError):
    """Raises an error when a program declares a type wider than the oracle accepts."""

    pass


class EnumerationBudgetExceeded(RuntimeError):
    """Raises an error when the exhaustive oracle would enumerate too many states."""

    def __init__(self, required, budget):
        """Initialize the budget error.

        Parameters
        ----------
        required : int
            Number of initial environments the enumeration needs.
        budget : int
            Configured maximum.
        """
        self.required = required
        self.budget = budget
        RuntimeError.__init__(
            self, f"Enumeration needs {required} environments, the budget is {budget}."
        )


class IrreducibleLoopError(ValueError):
    """Raises an error when loop instrumentation meets a back edge its head does not dominate."""

    pass


class FaultKind(str, enum.Enum):
    """Kinds of runtime faults of the concrete semantics."""

    DIV_BY_ZERO = "div-by-zero"
    SHIFT_OUT_OF_RANGE = "shift-out-of-range"


class EvaluationFault(ArithmeticError):
    """Raises an error when a concrete expression cannot be evaluated."""

    def __init__(self, kind: FaultKind, msg=None):
        self.kind = kind
        ArithmeticError.__init__(self, msg or kind.value)


def protect_analysis(func):
    """Turn a keyboard interrupt raised during a long analysis into a cap error.

    The command line maps :class:`AnalysisCapExceeded` to its own exit code,
    so an interrupted run ends like a run that hit its iteration cap.
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except KeyboardInterrupt:
            logger.info(f"KeyboardInterrupt received during {func.__name__}.")
            raise AnalysisCapExceeded(f"Interrupted during {func.__name__}.") from None

    return wrapper
