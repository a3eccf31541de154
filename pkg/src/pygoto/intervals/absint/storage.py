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

"""Backing stores of the abstract interpreter.

Three representations of the per-statement entry states are available:

* ``full_copy`` materializes a table with the interval of every declared
  variable for every stored state.
* ``shared_interval`` keeps only the tracked variables of each state and
  interns interval objects, so equal intervals are shared across statements.
* ``shared_domain_cow`` additionally interns whole environments: statements
  whose states are equal share one record, and a record is only copied when a
  statement's state diverges from it.

All stores answer queries identically. They differ in the allocation
counters they keep, ``interval_objects`` and ``env_records``, which count
objects created over the lifetime of the store.
"""

import enum
import typing

from pygoto.intervals import LOG as logger
from pygoto.intervals.absint.env import AbstractEnv
from pygoto.intervals.domains.config import DomainKind
from pygoto.intervals.domains.evaluate import Interval
from pygoto.intervals.ir.types import MachType


class StorageMode(str, enum.Enum):
    """Representation of the per-statement entry states."""

    FULL_COPY = "full_copy"
    SHARED_INTERVAL = "shared_interval"
    SHARED_DOMAIN_COW = "shared_domain_cow"


class _Store:
    mode: StorageMode

    def __init__(self, symbols: typing.Mapping[str, MachType], domain: DomainKind):
        self.symbols = symbols
        self.domain = DomainKind(domain)
        self.interval_objects = 0
        self.env_records = 0

    def __contains__(self, index: int) -> bool:
        return index in self._entries

    def indices(self) -> typing.List[int]:
        return sorted(self._entries)

    def counters(self) -> typing.Dict[str, int]:
        return {"interval_objects": self.interval_objects, "env_records": self.env_records}


class FullCopyStore(_Store):
    """One table holding every declared variable per stored state."""

    mode = StorageMode.FULL_COPY

    def __init__(self, symbols, domain):
        super().__init__(symbols, domain)
        self._entries: typing.Dict[int, typing.Optional[typing.Dict[str, Interval]]] = {}

    def put(self, index: int, env: AbstractEnv):
        if env.is_bottom():
            self._entries[index] = None
        else:
            self._entries[index] = dict(env.items())
            self.interval_objects += len(self.symbols)
        self.env_records += 1

    def get(self, index: int) -> typing.Optional[AbstractEnv]:
        if index not in self._entries:
            return None
        table = self._entries[index]
        if table is None:
            return AbstractEnv(self.symbols, self.domain, bottom=True)
        bindings = {name: interval for name, interval in table.items() if not interval.is_top()}
        return AbstractEnv(self.symbols, self.domain, bindings)


class SharedIntervalStore(_Store):
    """Tracked variables only, with interned interval objects."""

    mode = StorageMode.SHARED_INTERVAL

    def __init__(self, symbols, domain):
        super().__init__(symbols, domain)
        self._entries: typing.Dict[int, typing.Optional[typing.Dict[str, Interval]]] = {}
        self._intervals: typing.Dict[Interval, Interval] = {}

    def _intern(self, interval: Interval) -> Interval:
        shared = self._intervals.get(interval)
        if shared is None:
            shared = self._intervals[interval] = interval
            self.interval_objects += 1
        return shared

    def put(self, index: int, env: AbstractEnv):
        if env.is_bottom():
            self._entries[index] = None
        else:
            self._entries[index] = {
                name: self._intern(interval) for name, interval in env.bindings.items()
            }
        self.env_records += 1

    def get(self, index: int) -> typing.Optional[AbstractEnv]:
        if index not in self._entries:
            return None
        bindings = self._entries[index]
        if bindings is None:
            return AbstractEnv(self.symbols, self.domain, bottom=True)
        return AbstractEnv(self.symbols, self.domain, bindings)


class SharedDomainStore(SharedIntervalStore):
    """Statements with equal states share one environment record."""

    mode = StorageMode.SHARED_DOMAIN_COW

    def __init__(self, symbols, domain):
        super().__init__(symbols, domain)
        self._records: typing.Dict[AbstractEnv, AbstractEnv] = {}

    def put(self, index: int, env: AbstractEnv):
        record = self._records.get(env)
        if record is None:
            bindings = {name: self._intern(interval) for name, interval in env.bindings.items()}
            record = AbstractEnv(self.symbols, self.domain, bindings, bottom=env.is_bottom())
            self._records[record] = record
            self.env_records += 1
        self._entries[index] = record

    def get(self, index: int) -> typing.Optional[AbstractEnv]:
        return self._entries.get(index)

    def shared_records(self) -> int:
        """Return the number of distinct records referenced by the stored statements."""
        return len({id(record) for record in self._entries.values()})


_STORES = {
    StorageMode.FULL_COPY: FullCopyStore,
    StorageMode.SHARED_INTERVAL: SharedIntervalStore,
    StorageMode.SHARED_DOMAIN_COW: SharedDomainStore,
}

_default_mode = StorageMode.SHARED_DOMAIN_COW


def set_storage_mode(mode: typing.Union[StorageMode, str]):
    """Select the storage mode used when ``compute_abs`` is not given one.

    Parameters
    ----------
    mode : StorageMode or str
        ``"full_copy"``, ``"shared_interval"`` or ``"shared_domain_cow"``.
    """
    global _default_mode
    _default_mode = StorageMode(mode)
    logger.debug(f"Storage mode set to {_default_mode.value}.")


def get_storage_mode() -> StorageMode:
    """Return the process-wide default storage mode."""
    return _default_mode


def make_store(mode, symbols, domain) -> _Store:
    """Create an empty store of the given mode."""
    return _STORES[StorageMode(mode)](symbols, domain)


def measure_storage(domain_map) -> typing.Dict[str, int]:
    """Replay the entries of a finished map into every store.

    Returns
    -------
    dict
        Interval-object count per storage mode name.
    """
    counts = {}
    for mode, store_class in _STORES.items():
        store = store_class(domain_map.program.symbols, domain_map.config.domain)
        for index in domain_map.indices():
            store.put(index, domain_map.entry(index))
        counts[mode.value] = store.interval_objects
    return counts

