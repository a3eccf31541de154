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

"""Analysis precision settings."""

from dataclasses import asdict, dataclass
import enum
import itertools
import typing


class DomainKind(str, enum.Enum):
    """Interval domain used by an analysis."""

    INTEGER = "integer"
    WRAPPED = "wrapped"


@dataclass(frozen=True)
class DomainConfig:
    """Precision configuration of an interval analysis.

    Parameters
    ----------
    domain : DomainKind, optional
        Interval domain. The default is ``DomainKind.INTEGER``.
    arithmetic : bool, optional
        Whether ``+ - * /`` are interpreted. When ``False`` their results are
        the initial value of the result type. The default is ``True``.
    bitwise : bool, optional
        Whether shifts, ``& | ^ ~`` and explicit casts ``(type) t`` are
        interpreted. When ``False`` their results are the initial value of the
        result type, so a cast loses the operand's range. The default is
        ``True``.
    widening : bool, optional
        Whether the interpreter widens growing states. The default is ``False``.
    """

    domain: DomainKind = DomainKind.INTEGER
    arithmetic: bool = True
    bitwise: bool = True
    widening: bool = False

    def __post_init__(self):
        object.__setattr__(self, "domain", DomainKind(self.domain))

    @property
    def wrapped(self) -> bool:
        return self.domain is DomainKind.WRAPPED

    def to_json(self) -> dict:
        data = asdict(self)
        data["domain"] = self.domain.value
        return data

    def label(self) -> str:
        """Short name such as ``integer+arith+bitwise``."""
        parts = [self.domain.value]
        if self.arithmetic:
            parts.append("arith")
        if self.bitwise:
            parts.append("bitwise")
        if self.widening:
            parts.append("widen")
        return "+".join(parts)


def all_configs() -> typing.List[DomainConfig]:
    """Return the 16 precision configurations in a fixed order."""
    return [
        DomainConfig(domain, arithmetic, bitwise, widening)
        for domain, arithmetic, bitwise, widening in itertools.product(
            DomainKind, (True, False), (True, False), (True, False)
        )
    ]
