"""Deterministic chunked parallelism.

Work is split into index-ordered chunks, mapped (possibly by a thread pool;
the heavy workers are batched numpy which releases the GIL), and merged in
submission order, so results never depend on the thread count.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def resolve_threads(threads: int | None) -> int:
    """Explicit argument, else SWITCHLAB_THREADS, else the core count."""
    if threads is not None:
        if threads < 1:
            raise ValueError("threads must be at least 1")
        return threads
    env = os.environ.get("SWITCHLAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def chunked(items: list, chunk_size: int) -> list[list]:
    return [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]


def ordered_map(fn, chunks, threads: int = 1) -> list:
    """Apply ``fn`` to every chunk, returning results in chunk order."""
    if threads <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, chunks))
