"""Instrumented quicksort with first-element pivot and inward scans.

The partition scheme routes keys equal to the pivot to the left and parks
the pivot at the up-pointer, which is what makes heavily tied inputs
degrade to quadratic cost. Comparison counting is exact: one count per
evaluation of either scan's key test (``x[down] <= a`` or ``x[up] > a``);
the short-circuited index guard is not counted. Both scan tests are
evaluated at least once per partition call, so a single-element range
costs exactly 2 comparisons and an all-equal input of length n costs
(n^2 + 3n) / 2.

The production driver replaces recursion with an explicit worklist in the
same left-first order, because tied inputs build partition trees of depth
Theta(n). ``quicksort_recursive`` keeps the recursive transcription as an
oracle for equivalence tests on small inputs.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
from numba import njit

__all__ = [
    "InstrumentedRun",
    "SortOutcome",
    "partition",
    "quicksort",
    "quicksort_recursive",
    "timed_sort",
    "clock_resolution",
]

Keys = Union[Sequence[float], Sequence[int], np.ndarray]


@dataclass
class InstrumentedRun:
    """Measurements of one sort: key comparisons, swaps, elapsed seconds.

    ``swaps`` counts element exchanges plus one final pivot placement per
    partition call. ``elapsed`` is 0.0 unless the sort was timed.
    """

    comparisons: int = 0
    swaps: int = 0
    elapsed: float = 0.0


@dataclass(frozen=True)
class SortOutcome:
    sorted_keys: np.ndarray
    run: InstrumentedRun


def _as_key_array(keys: Keys) -> np.ndarray:
    arr = np.asarray(keys)
    if arr.ndim != 1:
        raise ValueError(f"keys must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        return arr.astype(np.float64)
    if arr.dtype.kind in "iu":
        return arr.astype(np.int64, copy=False)
    if arr.dtype.kind == "f":
        return arr.astype(np.float64, copy=False)
    raise TypeError(f"keys must be numeric, got dtype {arr.dtype}")


@njit(cache=True)
def _partition_kernel(x, lb, ub, counts):
    a = x[lb]
    down = lb
    up = ub
    while True:
        while True:
            counts[0] += 1
            if x[down] <= a and down < ub:
                down += 1
            else:
                break
        while True:
            counts[0] += 1
            if x[up] > a:
                up -= 1
            else:
                break
        if down < up:
            t = x[down]
            x[down] = x[up]
            x[up] = t
            counts[1] += 1
        if down >= up:
            break
    x[lb] = x[up]
    x[up] = a
    counts[1] += 1
    return up


@njit(cache=True)
def _sort_kernel(x, counts):
    n = x.shape[0]
    stack = np.empty((2 * n + 4, 2), np.int64)
    stack[0, 0] = 0
    stack[0, 1] = n - 1
    top = 1
    while top > 0:
        top -= 1
        lb = stack[top, 0]
        ub = stack[top, 1]
        if lb > ub:
            continue
        pj = _partition_kernel(x, lb, ub, counts)
        # right range below left so the left range is processed first,
        # matching the recursive order
        stack[top, 0] = pj + 1
        stack[top, 1] = ub
        stack[top + 1, 0] = lb
        stack[top + 1, 1] = pj - 1
        top += 2


def partition(keys: Keys, lb: int, ub: int, counter: InstrumentedRun) -> int:
    """Partition keys[lb..ub] around keys[lb] in place; return the pivot index.

    Mutates ``keys`` (list or ndarray) and adds the exact comparison and
    swap counts to ``counter``. Index contract violations are programming
    errors and trip an assertion.
    """
    size = len(keys)
    assert 0 <= lb <= ub < size, f"partition contract: 0 <= {lb} <= {ub} < {size}"
    counts = np.zeros(2, np.int64)
    if isinstance(keys, np.ndarray):
        pj = _partition_kernel(keys, lb, ub, counts)
    else:
        arr = _as_key_array(keys).copy()
        pj = _partition_kernel(arr, lb, ub, counts)
        keys[:] = arr.tolist()
    counter.comparisons += int(counts[0])
    counter.swaps += int(counts[1])
    return int(pj)


def quicksort(keys: Keys) -> SortOutcome:
    """Sort a copy of ``keys``, returning the sorted array and exact counts.

    The input is never mutated. ``elapsed`` is left at 0.0; use
    ``timed_sort`` to measure wall time.
    """
    arr = _as_key_array(keys).copy()
    counts = np.zeros(2, np.int64)
    _sort_kernel(arr, counts)
    return SortOutcome(arr, InstrumentedRun(int(counts[0]), int(counts[1])))


def timed_sort(keys: Keys, clock: Callable[[], float] = time.perf_counter) -> SortOutcome:
    """Sort a copy of ``keys``, timing the sort call only.

    The clock brackets the sort; key-array preparation is excluded. The
    default clock is the monotonic high-resolution ``time.perf_counter``
    (see ``clock_resolution``).
    """
    arr = _as_key_array(keys).copy()
    counts = np.zeros(2, np.int64)
    start = clock()
    _sort_kernel(arr, counts)
    elapsed = clock() - start
    return SortOutcome(arr, InstrumentedRun(int(counts[0]), int(counts[1]), float(elapsed)))


def clock_resolution() -> float:
    """Reported resolution of the timing clock, in seconds."""
    return time.get_clock_info("perf_counter").resolution


# ---------------------------------------------------------------------------
# recursive transcription, kept as the equivalence oracle for the worklist
# driver; only suitable for small n (recursion depth reaches n on tied input)

def _partition_py(x, lb, ub, counts):
    a = x[lb]
    down = lb
    up = ub
    while True:
        while True:
            counts[0] += 1
            if x[down] <= a and down < ub:
                down += 1
            else:
                break
        while True:
            counts[0] += 1
            if x[up] > a:
                up -= 1
            else:
                break
        if down < up:
            x[down], x[up] = x[up], x[down]
            counts[1] += 1
        if down >= up:
            break
    x[lb] = x[up]
    x[up] = a
    counts[1] += 1
    return up


def _quicksort_py(x, lb, ub, counts):
    if lb > ub:
        return
    pj = _partition_py(x, lb, ub, counts)
    _quicksort_py(x, lb, pj - 1, counts)
    _quicksort_py(x, pj + 1, ub, counts)


def quicksort_recursive(keys: Keys) -> SortOutcome:
    """Literal recursive form of ``quicksort``, for cross-checking counts."""
    arr = _as_key_array(keys).copy()
    counts = [0, 0]
    limit = sys.getrecursionlimit()
    try:
        sys.setrecursionlimit(max(limit, len(arr) + 512))
        _quicksort_py(arr, 0, len(arr) - 1, counts)
    finally:
        sys.setrecursionlimit(limit)
    return SortOutcome(arr, InstrumentedRun(counts[0], counts[1]))
