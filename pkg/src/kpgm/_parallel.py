"""Optional thread parallelism for sweeps, capped by KPGM_THREADS."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def max_workers() -> int:
    raw = os.environ.get("KPGM_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """map() preserving input order, threaded when KPGM_THREADS > 1.

    All mapped functions in this package are pure, so execution order is
    irrelevant to the result.
    """
    items = list(items)
    workers = max_workers()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
