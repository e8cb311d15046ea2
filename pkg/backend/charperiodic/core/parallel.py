import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from charperiodic.core.config import get_settings

T = TypeVar("T")
R = TypeVar("R")

_thread_override: Optional[int] = None


def set_thread_limit(threads: Optional[int]) -> None:
    """Cap the worker count for this process (CLI --threads)"""
    global _thread_override
    _thread_override = threads if threads and threads > 0 else None


def worker_count() -> int:
    """Resolve the worker count: --threads, then CHARPERIODIC_THREADS, then CPU count"""
    if _thread_override:
        return _thread_override
    configured = get_settings().THREADS
    if configured > 0:
        return configured
    return os.cpu_count() or 1


def map_chunks(func: Callable[[T], R], chunks: Iterable[T]) -> List[R]:
    """
    Apply func to every chunk, in order, on the shared worker pool

    Args:
        func: Pure function of one chunk
        chunks: Work items

    Returns:
        Results in input order
    """
    items = list(chunks)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
