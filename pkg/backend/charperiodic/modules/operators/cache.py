import threading
from collections import OrderedDict
from typing import Optional, Tuple

from loguru import logger

from charperiodic.core.config import get_settings
from charperiodic.modules.model import ProblemSpec
from charperiodic.modules.operators.assembly import DiscreteOperators

CacheKey = Tuple[ProblemSpec, int, int, int]


class OperatorCache:
    """
    Assembled operators keyed by (spec, nx, nt, n_steps)

    Thread-safe; assembly runs outside the lock, so two threads may build the
    same key concurrently and the first stored result wins.
    """

    def __init__(self, max_entries: int = 8):
        self.max_entries = max_entries
        self._entries: "OrderedDict[CacheKey, DiscreteOperators]" = OrderedDict()
        self._lock = threading.Lock()

    def get(
        self,
        spec: ProblemSpec,
        nx: Optional[int] = None,
        nt: Optional[int] = None,
        n_steps: Optional[int] = None,
    ) -> DiscreteOperators:
        settings = get_settings()
        key = (
            spec,
            settings.GRID_NX if nx is None else nx,
            settings.GRID_NT if nt is None else nt,
            settings.ODE_STEPS if n_steps is None else n_steps,
        )
        with self._lock:
            ops = self._entries.get(key)
            if ops is not None:
                self._entries.move_to_end(key)
                logger.debug(f"operator cache hit for grid {key[1]}x{key[2]}")
                return ops

        built = DiscreteOperators(spec, key[1], key[2], key[3])

        with self._lock:
            ops = self._entries.setdefault(key, built)
            self._entries.move_to_end(key)
            while len(self._entries) > self.max_entries:
                self._entries.popitem(last=False)
        return ops

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)


# Global cache instance
_cache = OperatorCache()


def get_operators(
    spec: ProblemSpec,
    nx: Optional[int] = None,
    nt: Optional[int] = None,
    n_steps: Optional[int] = None,
) -> DiscreteOperators:
    """Shared assembled operators for one grid"""
    return _cache.get(spec, nx, nt, n_steps)


def get_cache() -> OperatorCache:
    return _cache
