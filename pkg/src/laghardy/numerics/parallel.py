from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """Map ``fn`` over ``items`` keeping input order, so reductions stay deterministic."""
    items = list(items)
    if threads is None:
        from ..config import get_settings

        threads = get_settings().threads
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug("Mapping %d items over %d threads", len(items), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


__all__ = ["parallel_map"]
