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

import threading
import time

import pytest

from pygoto.intervals.pool import EnumerationPool


def count_range(start, stop):
    return sum(range(start, stop))


def test_minimum_workers():
    with pytest.raises(ValueError):
        EnumerationPool(0)
    assert len(EnumerationPool(3)) == 3


def test_map_keeps_order():
    pool = EnumerationPool(3)
    inputs = [(0, 10), (10, 20), (20, 30), (30, 31)]
    assert pool.map(count_range, inputs) == [45, 145, 245, 30]


def test_map_single_arguments():
    assert EnumerationPool(2).map(lambda value: value * 2, [1, 2, 3]) == [2, 4, 6]


def test_map_no_job():
    assert EnumerationPool(2).map(count_range, []) == []


def test_map_progress_bar(capsys):
    results = EnumerationPool(2).map(count_range, [(0, 3), (3, 6)], progress_bar=True, desc="Gate")
    assert results == [3, 12]
    assert "Gate" in capsys.readouterr().err


def test_map_bounds_concurrency():
    running = []
    peak = []
    lock = threading.Lock()

    def job(index):
        with lock:
            running.append(index)
            peak.append(len(running))
        time.sleep(0.01)
        with lock:
            running.remove(index)
        return index

    assert EnumerationPool(2).map(job, range(8)) == list(range(8))
    assert max(peak) <= 2


def test_map_raises_first_error():
    def job(value):
        if value in (2, 4):
            raise ValueError(f"job {value}")
        return value

    with pytest.raises(ValueError, match="job 2"):
        EnumerationPool(4).map(job, range(6))
