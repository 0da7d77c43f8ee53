"""
Parallel Module
Order-preserving sharded map used by the enumeration and scan drivers
"""

import logging
import multiprocessing
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from config.settings import DEFAULT_WORKERS

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def _make_executor(max_workers: Optional[int]) -> Executor:
    """Process pool with 'fork' where available, threads otherwise."""
    try:
        ctx = multiprocessing.get_context("fork")
        return ProcessPoolExecutor(max_workers=max_workers, mp_context=ctx)
    except (ValueError, OSError) as e:
        logger.warning("process pool unavailable (%s), falling back to threads", e)
        return ThreadPoolExecutor(max_workers=max_workers)


def sharded_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """
    Apply func to every item, possibly across worker processes.

    Results come back in input order, so output never depends on the worker count.

    Args:
        func: Module-level (picklable) function
        items: Work items
        workers: Worker count; None means FUSCAT_WORKERS or the available parallelism, 1 runs inline

    Returns:
        List of results in input order
    """
    items = list(items)
    workers = workers if workers is not None else DEFAULT_WORKERS
    if workers == 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.debug("sharding %d items over %s workers", len(items), workers or "all")
    with _make_executor(workers) as executor:
        return list(executor.map(func, items))
