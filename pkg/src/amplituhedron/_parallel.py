"""Order-preserving parallel map with a worker cap."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_jobs(jobs: int | None = None) -> int:
    """AMPLI_JOBS wins over the argument; the default is one worker."""
    env = os.environ.get("AMPLI_JOBS")
    if env:
        try:
            jobs = int(env)
        except ValueError:
            raise ValueError(f"AMPLI_JOBS must be an integer, got {env!r}") from None
    return max(1, jobs or 1)


def pmap(fn: Callable[[T], R], items: Iterable[T], jobs: int | None = None) -> list[R]:
    items = list(items)
    jobs = resolve_jobs(jobs)
    if jobs == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))
