from __future__ import annotations

from functools import lru_cache

from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@lru_cache(maxsize=None)
def partitions(n_max: int, allowed: frozenset[int] | None = None) -> tuple[int, ...]:
    """Partition counts p(0..n_max) with parts drawn from ``allowed`` (default: all), by coin-change DP."""
    counts = [1] + [0] * n_max
    parts = range(1, n_max + 1) if allowed is None else sorted(p for p in allowed if p <= n_max)
    for part in parts:
        for total in range(part, n_max + 1):
            counts[total] += counts[total - part]
    return tuple(counts)


def brute_partitions(n: int, max_part: int | None = None, odd_only: bool = False) -> int:
    """Count partitions of ``n`` by explicit recursion over non-increasing parts."""
    if max_part is None:
        max_part = n
    if n == 0:
        return 1
    total = 0
    for part in range(min(n, max_part), 0, -1):
        if odd_only and part % 2 == 0:
            continue
        total += brute_partitions(n - part, part, odd_only)
    return total
