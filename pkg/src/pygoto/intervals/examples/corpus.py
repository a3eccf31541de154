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

"""Access to the GOTO programs shipped with the package."""

import os
import shutil
import typing

from pygoto.intervals.ir import Program, parse_file

CORPUS_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "corpus")
"""Directory holding the shipped ``.goto`` files."""

_SUFFIX = ".goto"


def list_examples() -> typing.List[str]:
    """Return the names of the shipped programs, sorted."""
    return sorted(
        filename[: -len(_SUFFIX)]
        for filename in os.listdir(CORPUS_PATH)
        if filename.endswith(_SUFFIX)
    )


def example_path(name: str) -> str:
    """Return the path of a shipped program.

    Parameters
    ----------
    name : str
        Program name, with or without the ``.goto`` extension.

    Returns
    -------
    str
        Absolute path of the file.

    Raises
    ------
    FileNotFoundError
        If no shipped program has this name.

    Examples
    --------
    >>> from pygoto.intervals import examples
    >>> os.path.basename(examples.example_path("counter_loop"))
    'counter_loop.goto'
    """
    if name.endswith(_SUFFIX):
        name = name[: -len(_SUFFIX)]
    path = os.path.join(CORPUS_PATH, name + _SUFFIX)
    if not os.path.isfile(path):
        raise FileNotFoundError(
            f"No example named '{name}'. Available examples: {', '.join(list_examples())}."
        )
    return path


def load_example(name: str) -> Program:
    """Parse a shipped program."""
    return parse_file(example_path(name))


def copy_example(name: str, destination: str, force: bool = False) -> str:
    """Copy a shipped program to a directory so it can be edited.

    Parameters
    ----------
    name : str
        Program name.
    destination : str
        Target directory, created if missing.
    force : bool, optional
        Whether to overwrite an existing copy. The default is ``False``, in
        which case an existing file is kept.

    Returns
    -------
    str
        Path of the copy.
    """
    source = example_path(name)
    os.makedirs(destination, exist_ok=True)
    local_path = os.path.join(destination, os.path.basename(source))
    if force or not os.path.isfile(local_path):
        shutil.copyfile(source, local_path)
    return local_path
