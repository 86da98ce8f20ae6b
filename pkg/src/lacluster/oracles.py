"""Brute-force references for the test suite.

These deliberately avoid the prefix-sum and Weiszfeld code paths: window
costs are recomputed from scratch with exactly rounded sums, and subsets are
enumerated outright.
"""

from __future__ import annotations

from itertools import combinations
import math

from .core import DomainError, WidthError
from .window import TIE_RTOL, tie_atol

MAX_SUBSET_N = 12


def _sse(z) -> float:
    mu = math.fsum(z) / len(z)
    return math.fsum((x - mu) ** 2 for x in z)


def brute_window(values, w: int) -> tuple[float, int]:
    """(cost, start) of the best contiguous window, O(n * w)."""
    v = sorted(float(x) for x in values)
    n = len(v)
    if not 1 <= w <= n:
        raise WidthError(f"window width {w} outside [1, {n}]")
    costs = [_sse(v[s:s + w]) for s in range(n - w + 1)]
    best = min(costs)
    thr = best * (1 + TIE_RTOL) + tie_atol(w, max(abs(v[0]), abs(v[-1])))
    start = next(s for s, c in enumerate(costs) if c <= thr)
    return costs[start], start


def brute_subset_window(values, w: int) -> float:
    """Minimum 1-means cost over all size-``w`` subsets (n <= 12)."""
    v = [float(x) for x in values]
    n = len(v)
    if n > MAX_SUBSET_N:
        raise DomainError(f"refusing to enumerate subsets of n={n} > {MAX_SUBSET_N}")
    if not 1 <= w <= n:
        raise WidthError(f"window width {w} outside [1, {n}]")
    return min(_sse(z) for z in combinations(v, w))


def brute_median_1d(values) -> float:
    v = sorted(float(x) for x in values)
    if not v:
        raise DomainError("median of no values")
    n = len(v)
    if n % 2:
        return v[n // 2]
    return 0.5 * (v[n // 2 - 1] + v[n // 2])
