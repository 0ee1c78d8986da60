"""Deterministic chunked parallelism.

Work is split into chunks processed in order; results are merged in chunk
order, so output never depends on the worker count. The count is read
from the CONTRAPUNCTUS_THREADS environment variable (default 1).
"""

from __future__ import annotations

import os
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from itertools import islice
from typing import TypeVar

ENV_THREADS = "CONTRAPUNCTUS_THREADS"
_MAX_WORKERS = 64

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    raw = os.environ.get(ENV_THREADS, "")
    try:
        count = int(raw)
    except ValueError:
        return 1
    return max(1, min(count, _MAX_WORKERS))


def iter_chunks(items: Iterable[T], chunk_size: int) -> Iterator[list[T]]:
    iterator = iter(items)
    while True:
        chunk = list(islice(iterator, chunk_size))
        if not chunk:
            return
        yield chunk


def map_chunks(fn: Callable[[list[T]], R], items: Iterable[T], chunk_size: int = 1024) -> list[R]:
    """Apply fn to successive chunks; the result list preserves chunk order."""
    chunks = iter_chunks(items, chunk_size)
    workers = worker_count()
    if workers == 1:
        return [fn(chunk) for chunk in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))
