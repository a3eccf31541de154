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

"""Named interval analysis flags, an alternative to the precision options."""

import typing
import warnings

from pygoto.intervals.domains.config import DomainConfig, DomainKind


class IntervalFlags:
    """Supported interval analysis flag names."""

    Wrapped = "interval-analysis-wrapped"
    Arithmetic = "interval-analysis-arithmetic"
    Bitwise = "interval-analysis-bitwise"
    Extrapolate = "interval-analysis-extrapolate"


def get_flag_names() -> typing.List[str]:
    """Get the available interval analysis flags."""
    return [x for x in dir(IntervalFlags) if "_" not in x]


def _get_flag_arg(flagname: str) -> str:
    """Get the command line name for a given flag."""
    if hasattr(IntervalFlags, flagname):
        return getattr(IntervalFlags, flagname)
    if flagname in (getattr(IntervalFlags, name) for name in get_flag_names()):
        return flagname
    warnings.warn(f"Using undocumented interval analysis flag {flagname}")
    return flagname


def get_command_line_arguments(flags: typing.List[str]) -> typing.List[str]:
    """Get the command line arguments as an array for the given flags."""
    return ["--analysis-flags", ";".join([_get_flag_arg(flag) for flag in flags])]


def config_from_flags(flags: typing.Iterable[str]) -> DomainConfig:
    """Build a precision configuration from flag names.

    Flags absent from the list are off, so an empty list selects the integer
    domain with only comparisons interpreted. Undocumented flags are ignored
    with a warning.

    Examples
    --------
    >>> config = config_from_flags(["Wrapped", "interval-analysis-arithmetic"])
    >>> config.label()
    'wrapped+arith'
    """
    names = {_get_flag_arg(flag.strip()) for flag in flags if flag.strip()}
    return DomainConfig(
        domain=DomainKind.WRAPPED if IntervalFlags.Wrapped in names else DomainKind.INTEGER,
        arithmetic=IntervalFlags.Arithmetic in names,
        bitwise=IntervalFlags.Bitwise in names,
        widening=IntervalFlags.Extrapolate in names,
    )


def flags_from_config(config: DomainConfig) -> typing.List[str]:
    """Return the flag names that select ``config``."""
    flags = []
    if config.wrapped:
        flags.append(IntervalFlags.Wrapped)
    if config.arithmetic:
        flags.append(IntervalFlags.Arithmetic)
    if config.bitwise:
        flags.append(IntervalFlags.Bitwise)
    if config.widening:
        flags.append(IntervalFlags.Extrapolate)
    return flags


def parse_flag_string(text: str) -> DomainConfig:
    """Parse a semicolon-separated flag list such as ``"Wrapped;Arithmetic"``."""
    return config_from_flags(text.split(";"))
