"""Ordered thread-pool map; ``ORBITQUANT_THREADS`` caps the worker count."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("ORBITQUANT_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)


def ordered_map(fn, items) -> list:
    """Results in input order, so downstream reductions are reproducible."""
    items = list(items)
    n = min(thread_count(), len(items))
    if n <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def chunks(seq, size: int):
    seq = list(seq)
    return [seq[i:i + size] for i in range(0, len(seq), size)]
