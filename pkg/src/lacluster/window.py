"""Minimum-variance contiguous window over sorted 1-D projections.

A window of ``w`` consecutive sorted values is scored by its 1-means cost
``sum(z**2) - sum(z)**2 / w``. Prefix sums give every window's score in one
linear pass after the sort; the few windows whose prefix score is within
round-off of the minimum are then re-scored with a two-pass formula so that
ties resolve to the smallest start reliably.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .core import DomainError, WidthError, check_alpha

# Relative slack under which two window costs count as equal.
TIE_RTOL = 1e-12
# Candidate filter on prefix-sum scores; generous relative to round-off.
_FILTER_RTOL = 1e-9
_FILTER_ATOL = 1e-11
# Upper bound on values re-scored per column (candidates x width).
_RESCORE_BUDGET = 4_000_000


@dataclass(frozen=True)
class WindowResult:
    start: int
    width: int
    mean: float
    cost: float


def tie_atol(width: int, maxabs: float) -> float:
    """Absolute tie slack: the round-off floor of a two-pass cost."""
    return width * (1e-12 * maxabs) ** 2


def window_width(cluster_size: int, alpha: float) -> int:
    """Number of points kept per window: ``m - floor(alpha * m)``."""
    m = int(cluster_size)
    if m < 1:
        raise DomainError(f"cluster size must be >= 1, got {m}")
    alpha = check_alpha(alpha)
    # the 1e-9 guard keeps e.g. 0.29 * 100 from flooring to 28
    return m - int(math.floor(alpha * m + 1e-9))


def prefix_costs(sorted_vals: np.ndarray, width: int) -> np.ndarray:
    """Window costs from prefix sums.

    ``sorted_vals`` is (n,) or (n, d) sorted along axis 0; the result has
    ``n - width + 1`` rows. Values are centred on the middle order
    statistic first to limit cancellation.
    """
    n = sorted_vals.shape[0]
    u = sorted_vals - sorted_vals[n // 2]
    zero = np.zeros((1,) + u.shape[1:])
    s1 = np.concatenate([zero, np.cumsum(u, axis=0)])
    s2 = np.concatenate([zero, np.cumsum(u * u, axis=0)])
    w1 = s1[width:] - s1[:-width]
    w2 = s2[width:] - s2[:-width]
    c = w2 - w1 * w1 / width
    return np.maximum(c, 0.0)


def _rescore(sorted_vals: np.ndarray, starts: np.ndarray, width: int) -> np.ndarray:
    idx = starts[:, None] + np.arange(width)[None, :]
    z = sorted_vals[idx]
    z = z - z[:, :1]
    mu = z.mean(axis=1, keepdims=True)
    return ((z - mu) ** 2).sum(axis=1)


def _select(sorted_vals: np.ndarray, width: int, costs: np.ndarray):
    """Pick the first start whose exact cost is within tie slack of the minimum."""
    n = sorted_vals.shape[0]
    energy = float(np.sum((sorted_vals - sorted_vals[n // 2]) ** 2))
    cmin = costs.min()
    thr = cmin * (1 + _FILTER_RTOL) + _FILTER_ATOL * energy
    cand = np.flatnonzero(costs <= thr)
    cap = max(1, _RESCORE_BUDGET // width)
    if cand.size > cap:
        # keep the lowest-scoring candidates, earliest first among equal scores
        keep = np.argsort(costs[cand], kind="stable")[:cap]
        cand = np.sort(cand[keep])
    exact = _rescore(sorted_vals, cand, width)
    maxabs = float(np.abs(sorted_vals[[0, -1]]).max())
    best = exact.min()
    ok = exact <= best * (1 + TIE_RTOL) + tie_atol(width, maxabs)
    j = int(np.argmax(ok))
    return int(cand[j]), float(exact[j])


def best_window_sorted(sorted_vals: np.ndarray, width: int) -> WindowResult:
    """:func:`best_window` on values already sorted ascending."""
    n = sorted_vals.shape[0]
    if not 1 <= width <= n:
        raise WidthError(f"window width {width} outside [1, {n}]")
    start, cost = _select(sorted_vals, width, prefix_costs(sorted_vals, width))
    mean = float(sorted_vals[start:start + width].mean())
    return WindowResult(start, width, mean, cost)


def best_window(values, width: int) -> WindowResult:
    """Minimum 1-means-cost run of ``width`` consecutive sorted values.

    Ties go to the smallest start in the ascending (stable) sort.

    >>> best_window([0, 1, 2, 100], 3)
    WindowResult(start=0, width=3, mean=1.0, cost=2.0)
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.size == 0:
        raise WidthError("no values")
    return best_window_sorted(np.sort(v, kind="stable"), int(width))


def best_window_means(sorted_cols: np.ndarray, width: int) -> np.ndarray:
    """Window means for every column of an (n, d) column-sorted matrix."""
    n, d = sorted_cols.shape
    if not 1 <= width <= n:
        raise WidthError(f"window width {width} outside [1, {n}]")
    cols = np.ascontiguousarray(sorted_cols.T)
    if width == n:
        return cols.mean(axis=1)
    costs = prefix_costs(sorted_cols, width)
    out = np.empty(d)
    for j in range(d):
        col = cols[j]
        start, _ = _select(col, width, costs[:, j])
        out[j] = col[start:start + width].mean()
    return out
