"""Thread-pool helpers for independent starts and census trials."""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

logger = logging.getLogger(__name__)

THREADS_ENV = "TNDG_THREADS"


def resolve_threads(configured: Optional[int] = None) -> int:
    """Worker count: TNDG_THREADS wins over the configured value, minimum 1."""
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            logger.warning(f"Ignoring non-integer {THREADS_ENV}={value!r}")
    return max(1, int(configured or 1))


def ordered_map(func: Callable, items: Sequence, threads: int = 1) -> list:
    """Apply func to every item and return results in input order."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))
