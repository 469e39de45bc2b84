"""Streaming count of minimal marked structures (the three-order benchmark)."""

from __future__ import annotations

import os
import resource
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .marked import iter_minimal_raw

DEFAULT_MEMORY_CAP = 4 << 30  # bytes
_CHECK_EVERY = 1 << 16


class ResourceLimit(RuntimeError):
    """The configured memory cap was exceeded."""


@dataclass(frozen=True)
class BenchResult:
    order_count: int
    count: int
    per_size: dict
    seconds: float
    threads: int
    peak_rss: int
    deduplicated: bool

    def to_json(self) -> dict:
        return {
            "order_count": self.order_count,
            "count": self.count,
            "per_size": {str(k): v for k, v in sorted(self.per_size.items())},
            "seconds": round(self.seconds, 3),
            "threads": self.threads,
            "peak_rss_bytes": self.peak_rss,
            "deduplicated": self.deduplicated,
        }


def peak_rss() -> int:
    # ru_maxrss is in KiB on Linux
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024


def _encode(size: int, mark: int, words) -> int:
    """Injective integer code for a canonical (size, mark, words) triple."""
    code = size * 16 + mark
    for w in words:
        for e in w:
            code = code * 16 + e
    return code


def _count_cell(args) -> tuple[int, int, int, set | None]:
    order_count, size, mark, dedup, cap = args
    seen = set() if dedup else None
    n = 0
    for words in iter_minimal_raw(order_count, size, mark):
        n += 1
        if seen is not None:
            seen.add(_encode(size, mark, words))
        if n % _CHECK_EVERY == 0 and peak_rss() > cap:
            raise ResourceLimit(f"resident memory exceeded {cap} bytes at size {size}, mark {mark}")
    if seen is not None and len(seen) != n:
        raise RuntimeError(f"duplicate canonical forms at size {size}, mark {mark}")
    return size, mark, n, None


def count_minimal_benchmark(order_count: int = 3, threads: int | None = None, dedup: bool = False,
                            memory_cap: int = DEFAULT_MEMORY_CAP) -> BenchResult:
    """Count minimal marked structures without materializing them.

    Work is split into (size, mark) cells; each cell is canonical on its
    own, so counts simply add.  With ``dedup`` every structure is also
    hashed into a per-cell set to confirm that no canonical form repeats.
    Raises ResourceLimit when peak resident memory passes ``memory_cap``.
    """
    if threads is None:
        threads = os.cpu_count() or 1
    threads = max(1, threads)
    cells = [(order_count, size, mark, dedup, memory_cap)
             for size in range(2 * order_count + 1, 0, -1)
             for mark in range(1, size + 1)]
    start = time.perf_counter()
    per_size: dict[int, int] = {}
    if threads == 1:
        results = map(_count_cell, cells)
    else:
        pool = ProcessPoolExecutor(max_workers=threads)
        results = pool.map(_count_cell, cells)
    try:
        for size, _, n, _ in results:
            per_size[size] = per_size.get(size, 0) + n
    finally:
        if threads > 1:
            pool.shutdown()
    if peak_rss() > memory_cap:
        raise ResourceLimit(f"resident memory exceeded {memory_cap} bytes")
    return BenchResult(order_count, sum(per_size.values()), per_size, time.perf_counter() - start,
                       threads, peak_rss(), dedup)
