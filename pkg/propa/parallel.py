"""Process-pool mapping for independent work items."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

from propa.config import get_logger_instance

logger = get_logger_instance("propa.parallel")

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """Apply ``func`` to every item, in order, using up to ``jobs`` processes.

    ``func`` and the items must be picklable when ``jobs > 1``.
    """
    work = list(items)
    if jobs <= 1 or len(work) <= 1:
        return [func(item) for item in work]
    workers = min(jobs, len(work))
    logger.debug("Dispatching work items", items=len(work), workers=workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, work))


__all__ = ["parallel_map"]
