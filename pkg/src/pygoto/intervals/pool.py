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

"""This module is for threaded execution of independent enumeration jobs."""

import threading
import typing

from pygoto.intervals import LOG
from pygoto.intervals.misc import check_positive_int, threaded_daemon

try:
    from tqdm import tqdm

    _HAS_TQDM = True
except ModuleNotFoundError:  # pragma: no cover
    _HAS_TQDM = False


class EnumerationPool:
    """Run jobs on a bounded number of daemon threads.

    Parameters
    ----------
    n_workers : int, optional
        Maximum number of jobs running at the same time. The default is ``2``.

    Examples
    --------
    >>> from pygoto.intervals.pool import EnumerationPool
    >>> pool = EnumerationPool(4)
    >>> pool.map(lambda start, stop: sum(range(start, stop)), [(0, 10), (10, 20)])
    [45, 145]
    """

    def __init__(self, n_workers=2):
        """Initialize the pool."""
        check_positive_int(n_workers, "n_workers")
        self.n_workers = n_workers

    def __len__(self):
        """Get the number of worker threads."""
        return self.n_workers

    def map(self, func, iterable, progress_bar=False, desc="Enumerating"):
        """Run a function on every item of an iterable.

        Parameters
        ----------
        func : callable
            Function to run. Tuple items are unpacked into positional arguments.
        iterable : iterable
            Arguments of the jobs.
        progress_bar : bool, optional
            Whether to show a ``tqdm`` progress bar counting finished jobs.
            The default is ``False``.
        desc : str, optional
            Description shown by the progress bar.

        Returns
        -------
        list
            The return values, in the order of ``iterable``.

        Raises
        ------
        Exception
            The error of the first failed job, in the order of ``iterable``,
            after every job has finished.
        """
        jobs = list(iterable)
        results: typing.List[typing.Any] = [None] * len(jobs)
        errors = []

        pbar = None
        if progress_bar:
            if not _HAS_TQDM:  # pragma: no cover
                raise ModuleNotFoundError(
                    f"To use the keyword argument 'progress_bar', you must have installed "
                    f"the 'tqdm' package. To avoid this message, you can set 'progress_bar=False'."
                )

            pbar = tqdm(total=len(jobs), desc=desc)

        slots = threading.BoundedSemaphore(self.n_workers)
        lock = threading.Lock()

        @threaded_daemon
        def func_wrapper(index, args, name=""):
            LOG.debug(name)
            try:
                if isinstance(args, tuple):
                    results[index] = func(*args)
                else:
                    results[index] = func(args)
            except Exception as error:
                LOG.error(f"Job {index} failed: {error}")
                with lock:
                    errors.append((index, error))
            finally:
                slots.release()
                if pbar:
                    with lock:
                        pbar.update(1)

        threads = []
        for index, args in enumerate(jobs):
            slots.acquire()
            threads.append(func_wrapper(index, args, name=f"enumeration-job-{index}"))

        for thread in threads:
            thread.join()

        if pbar:
            pbar.close()

        if errors:
            raise min(errors, key=lambda item: item[0])[1]

        return results
