"""Partitioned exact accumulation.

Sums of exact integers/rationals over an index range are associative, so a
range can be split into chunks, each chunk summed independently (possibly
on worker threads), and the partial results combined in chunk order.  The
result is identical for every worker count; workers only affect wall time.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, TypeVar

T = TypeVar("T")


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split the inclusive range [lo, hi] into at most `parts` contiguous
    inclusive chunks covering it exactly."""
    if hi < lo:
        return []
    n = hi - lo + 1
    parts = max(1, min(parts, n))
    base, extra = divmod(n, parts)
    out = []
    start = lo
    for i in range(parts):
        size = base + (1 if i < extra else 0)
        out.append((start, start + size - 1))
        start += size
    return out


def partitioned_sum(
    range_sum: Callable[[int, int], T],
    lo: int,
    hi: int,
    workers: int | None = None,
    zero: T = 0,
) -> T:
    """Combine range_sum over a partition of [lo, hi] (inclusive).

    range_sum(a, b) must return the exact sum over the inclusive range
    [a, b].  With workers=None or 1 the range is evaluated in one piece;
    otherwise chunks run on a thread pool and are combined in chunk order,
    so the result does not depend on scheduling.
    """
    if hi < lo:
        return zero
    if not workers or workers <= 1:
        return range_sum(lo, hi)
    chunks = split_range(lo, hi, 4 * workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda ab: range_sum(*ab), chunks))
    total = zero
    for part in parts:
        total = total + part
    return total
