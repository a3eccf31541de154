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

"""Validation helpers and the worker-thread decorator."""

from functools import wraps
import os
from threading import Thread

from pygoto.intervals.ir.types import MAX_WIDTH


def threaded_daemon(func):
    """Run each call of ``func`` in a new daemon thread and return the thread.

    A ``name`` keyword argument, when given, also names the thread.
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        name = kwargs.get("name", f"{func.__name__} worker")
        thread = Thread(target=func, name=name, args=args, kwargs=kwargs, daemon=True)
        thread.start()
        return thread

    return wrapper


def check_positive_int(value, name="value"):
    """Check that a limit or a count is a positive integer.

    Parameters
    ----------
    value : int
        Value to check.
    name : str, optional
        Name used in the error message. The default is ``"value"``.
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"The '{name}' parameter must be an integer.")
    if value < 1:
        raise ValueError(f"'{name}' must be positive, got {value}.")


def check_valid_width_cap(width_cap):
    """Check that the oracle's width cap is between 1 and the widest type."""
    check_positive_int(width_cap, "width_cap")
    if width_cap > MAX_WIDTH:
        raise ValueError(f"'width_cap' values must be between 1 and {MAX_WIDTH}.")


def env_int(name, default):
    """Read a positive integer setting from the environment.

    Parameters
    ----------
    name : str
        Environment variable name.
    default : int
        Value used when the variable is unset or empty.

    Returns
    -------
    int
        The setting.
    """
    raw = os.environ.get(name)
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(
            f"The environment variable '{name}' must be an integer, got '{raw}'."
        ) from None
    check_positive_int(value, name)
    return value
