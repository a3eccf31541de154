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

"""Abstract environments."""

from types import MappingProxyType
import typing

from pygoto.intervals.domains.config import DomainKind
from pygoto.intervals.domains.evaluate import Interval, interval_class
from pygoto.intervals.errors import DomainMismatchError, UnboundVariableError
from pygoto.intervals.ir.types import MachType


class AbstractEnv:
    """Immutable map from variables to intervals.

    Only bindings below top are stored; a variable without a binding is at
    top. A Bottom environment stands for no state at all.

    Parameters
    ----------
    symbols : Mapping
        Symbol table, variable name to :class:`MachType`.
    domain : DomainKind
        Domain of the intervals.
    bindings : Mapping, optional
        Intervals of the tracked variables.
    bottom : bool, optional
        Whether the environment is Bottom. The default is ``False``.
    """

    __slots__ = ("symbols", "domain", "bindings", "bottom", "_hash")

    def __init__(
        self,
        symbols: typing.Mapping[str, MachType],
        domain: DomainKind,
        bindings: typing.Optional[typing.Mapping[str, Interval]] = None,
        bottom: bool = False,
    ):
        self.symbols = symbols
        self.domain = DomainKind(domain)
        self.bottom = bottom
        if bottom:
            bindings = {}
        self.bindings = MappingProxyType(dict(bindings or {}))
        self._hash = None

    @classmethod
    def initial(cls, symbols, domain) -> "AbstractEnv":
        """Return the environment where every variable is at top."""
        return cls(symbols, domain)

    def to_bottom(self) -> "AbstractEnv":
        if self.bottom:
            return self
        return AbstractEnv(self.symbols, self.domain, bottom=True)

    def is_bottom(self) -> bool:
        return self.bottom

    def _type(self, name: str) -> MachType:
        try:
            return self.symbols[name]
        except KeyError:
            raise UnboundVariableError(name) from None

    def get(self, name: str) -> Interval:
        """Return the interval of a variable."""
        mach_type = self._type(name)
        cls = interval_class(self.domain)
        if self.bottom:
            return cls.bottom(mach_type)
        interval = self.bindings.get(name)
        return cls.top(mach_type) if interval is None else interval

    def set(self, name: str, interval: Interval) -> "AbstractEnv":
        """Return the environment with ``name`` bound to ``interval``.

        Returns ``self`` when nothing changes and Bottom when ``interval`` is
        Bottom.
        """
        mach_type = self._type(name)
        if interval.type != mach_type:
            raise DomainMismatchError(
                f"Interval of type {interval.type} bound to '{name}' of type {mach_type}."
            )
        if self.bottom:
            return self
        if interval.is_bottom():
            return self.to_bottom()
        current = self.bindings.get(name)
        if interval.is_top():
            if current is None:
                return self
            bindings = dict(self.bindings)
            del bindings[name]
            return AbstractEnv(self.symbols, self.domain, bindings)
        if current == interval:
            return self
        bindings = dict(self.bindings)
        bindings[name] = interval
        return AbstractEnv(self.symbols, self.domain, bindings)

    def _combine(self, other: "AbstractEnv", operation) -> "AbstractEnv":
        bindings = {}
        for name, interval in self.bindings.items():
            if name in other.bindings:
                result = operation(interval, other.bindings[name])
                if not result.is_top():
                    bindings[name] = result
        if bindings == dict(self.bindings):
            return self
        return AbstractEnv(self.symbols, self.domain, bindings)

    def join(self, other: "AbstractEnv") -> "AbstractEnv":
        if self.bottom:
            return other
        if other.bottom:
            return self
        return self._combine(other, lambda a, b: a.join(b))

    def widen(self, new: "AbstractEnv") -> "AbstractEnv":
        if self.bottom:
            return new
        if new.bottom:
            return self
        return self._combine(new, lambda a, b: a.widen(b))

    def contains_env(self, other: "AbstractEnv") -> bool:
        """Check ``other ⊑ self`` variable by variable."""
        if other.bottom:
            return True
        if self.bottom:
            return False
        return all(
            interval.contains_interval(other.get(name))
            for name, interval in self.bindings.items()
        )

    def items(self) -> typing.List[typing.Tuple[str, Interval]]:
        """Return the interval of every declared variable, in declaration order."""
        return [(name, self.get(name)) for name in self.symbols]

    def tracked(self) -> int:
        """Return the number of variables below top."""
        return len(self.bindings)

    def to_json(self) -> dict:
        return {name: interval.to_json() for name, interval in self.items()}

    def annotation(self) -> str:
        """Render the environment as ``x : [0, 100], y : <1, 5>``."""
        if self.bottom:
            return "unreachable"
        return ", ".join(f"{name} : {interval}" for name, interval in self.items())

    def _key(self):
        return (self.domain, self.bottom, frozenset(self.bindings.items()))

    def __eq__(self, other):
        if not isinstance(other, AbstractEnv):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"AbstractEnv({self.annotation()})"
