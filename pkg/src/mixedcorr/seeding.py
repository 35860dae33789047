"""Per-item random streams.

Item ``i`` of a run seeded with ``seed`` always draws from the same generator,
so results do not depend on how items are scheduled across workers.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

import numpy as np

T = TypeVar("T")

DEFAULT_SEED = 20161


def item_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([int(index), int(seed)])


def map_items(fn: Callable[[int], T], count: int, workers: int = 1) -> list[T]:
    """Evaluate ``fn(i)`` for i in range(count), returned in index order."""
    if workers <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))


def mean_and_stderr(values: Sequence[float]) -> tuple[float, float]:
    """Sample mean and standard error, summed in index order."""
    x = np.asarray(values, dtype=float)
    if x.size < 2:
        return float(x.mean()), 0.0
    return float(x.mean()), float(x.std(ddof=1) / np.sqrt(x.size))
