"""Deterministic map with optional process-based parallelism.

Work items carry their own RNG substreams, so the result of
``parallel_map`` is a pure function of the item list: the worker count
changes wall time only, never values.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

__all__ = ["parallel_map"]


def parallel_map(fn, items, threads: int = 1) -> list:
    """Apply ``fn`` over ``items``, preserving order.

    threads <= 1 runs serially.  Otherwise a process pool is used; if
    the pool cannot start (restricted environments) the map silently
    falls back to serial execution, which yields identical results.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    try:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    except (OSError, PermissionError, RuntimeError):
        return [fn(x) for x in items]
