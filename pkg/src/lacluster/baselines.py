"""Predictor constructors and comparison baselines.

kmeans++ seeding with Lloyd iterations and the alternating k-medoids
heuristic build the reference partitions; the naive per-group mean/median
and the random-sampling baseline are what the learning-augmented
algorithms are compared against.
"""

from __future__ import annotations

import numpy as np

from .core import (CenterSet, DomainError, Labeling, ValidationError,
                   as_centers, as_dataset, assign_nearest, check_labels, cost)
from .geomedian import geometric_median

LLOYD_MAX_ITER = 300
KMEDOIDS_MAX_ITER = 100
TOL = 1e-9


def default_q_grid() -> np.ndarray:
    return np.linspace(0.01, 0.50, 15)


def _kmeanspp_indices(pts: np.ndarray, k: int, rng) -> list[int]:
    m = pts.shape[0]
    chosen = [int(rng.integers(m))]
    d2 = ((pts - pts[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            nxt = int(rng.choice(m, p=d2 / total))
        else:
            # only duplicates of chosen points remain
            nxt = int(rng.choice(np.setdiff1d(np.arange(m), chosen)))
        chosen.append(nxt)
        d2 = np.minimum(d2, ((pts - pts[nxt]) ** 2).sum(axis=1))
    return chosen


def kmeanspp_init(data, k: int, seed=None) -> CenterSet:
    """D^2 seeding: first center uniform, the rest proportional to the
    squared distance to the nearest chosen center."""
    data = as_dataset(data)
    if not 1 <= k <= data.m:
        raise DomainError(f"k={k} must lie in [1, m={data.m}]")
    idx = _kmeanspp_indices(data.points, k, np.random.default_rng(seed))
    return CenterSet(data.points[idx])


def lloyd(data, init, max_iter: int = LLOYD_MAX_ITER, tol: float = TOL,
          return_costs: bool = False):
    """Lloyd iterations from ``init``; returns (centers, labels[, costs]).

    ``costs[t]`` is the k-means cost after the t-th assignment step.
    Empty clusters are re-seeded at the point farthest from its center.
    """
    data, init = as_dataset(data), as_centers(init)
    pts = data.points
    centers = np.array(init.centers)
    k = centers.shape[0]
    assign, d2 = assign_nearest(data, centers)
    costs = [float(d2.sum())]
    for _ in range(max_iter):
        for i in range(k):
            members = assign == i
            if members.any():
                centers[i] = pts[members].mean(axis=0)
            else:
                far = int(np.argmax(d2))
                centers[i] = pts[far]
                assign[far] = i
                d2[far] = 0.0
        new_assign, d2 = assign_nearest(data, centers)
        prev = costs[-1]
        costs.append(float(d2.sum()))
        unchanged = np.array_equal(new_assign, assign)
        assign = new_assign
        if unchanged or prev - costs[-1] < tol * prev:
            break
    out = (CenterSet(centers), Labeling(assign, k))
    return out + (costs,) if return_costs else out


def _medoid(points: np.ndarray, chunk: int = 1024) -> int:
    """Index of the member minimising summed distance (lowest index on ties)."""
    n = points.shape[0]
    sums = np.empty(n)
    for lo in range(0, n, chunk):
        blk = points[lo:lo + chunk]
        d = np.sqrt(((blk[:, None, :] - points[None, :, :]) ** 2).sum(axis=2))
        sums[lo:lo + chunk] = d.sum(axis=1)
    return int(np.argmin(sums))


def kmedoids_alternating(data, k: int, seed=None,
                         max_iter: int = KMEDOIDS_MAX_ITER,
                         return_costs: bool = False):
    """Alternating k-medoids with l2 distances, seeded by kmeans++.

    Returns (centers, labels[, costs]); centers are always data points.
    """
    data = as_dataset(data)
    if not 1 <= k <= data.m:
        raise DomainError(f"k={k} must lie in [1, m={data.m}]")
    pts = data.points
    medoids = np.array(_kmeanspp_indices(pts, k, np.random.default_rng(seed)))
    assign, dist = assign_nearest(data, pts[medoids], squared=False)
    costs = [float(dist.sum())]
    for _ in range(max_iter):
        new = medoids.copy()
        for i in range(k):
            idx = np.flatnonzero(assign == i)
            if idx.size:
                new[i] = idx[_medoid(pts[idx])]
        if np.array_equal(new, medoids):
            break
        medoids = new
        assign, dist = assign_nearest(data, pts[medoids], squared=False)
        costs.append(float(dist.sum()))
    out = (CenterSet(pts[medoids]), Labeling(assign, k))
    return out + (costs,) if return_costs else out


def _group_center(points: np.ndarray, objective: str) -> np.ndarray:
    if objective == "means":
        return points.mean(axis=0)
    if objective == "medians":
        return geometric_median(points)
    raise DomainError(f"unknown objective {objective!r}")


def predictor_naive(data, labels: Labeling, objective: str = "means") -> CenterSet:
    """Mean or geometric median of each predicted group, outliers and all."""
    data = as_dataset(data)
    check_labels(data, labels)
    return CenterSet(np.vstack([_group_center(data.points[idx], objective)
                                for idx in labels.clusters()]))


def sampling_baseline(data, labels: Labeling, objective: str = "means",
                      q_grid=None, seed=None) -> tuple[CenterSet, float]:
    """Best of per-group centers computed on random q-fractions of each group.

    For every q in ``q_grid``, max(1, floor(q * m_i)) members of each group
    are drawn without replacement; the q whose centers give the lowest
    cost(P, C) wins (earliest q on ties).
    """
    data = as_dataset(data)
    check_labels(data, labels)
    grid = default_q_grid() if q_grid is None else np.asarray(q_grid, dtype=float)
    if grid.size == 0:
        raise ValidationError("empty q grid")
    if np.any((grid <= 0) | (grid > 1)):
        raise DomainError("q values must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    groups = labels.clusters()
    best = None
    for q in grid:
        rows = []
        for idx in groups:
            n = max(1, int(np.floor(q * idx.size + 1e-9)))
            pick = idx if n == idx.size else np.sort(rng.choice(idx, n, replace=False))
            rows.append(_group_center(data.points[pick], objective))
        centers = CenterSet(np.vstack(rows))
        c = cost(data, centers, objective)
        if best is None or c < best[0]:
            best = (c, centers, float(q))
    return best[1], best[2]
