"""Learning-augmented k-means: per-coordinate trimmed window means."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .core import CenterSet, Labeling, as_dataset, check_alpha, check_labels
from .window import best_window_means, window_width


def factor_kmeans(alpha: float) -> float:
    """Approximation factor guaranteed by :func:`la_kmeans` at error rate alpha."""
    a = check_alpha(alpha)
    return 1 + a / (1 - a) + 4 * a / ((1 - 2 * a) * (1 - a))


def _cluster_center(points: np.ndarray, alpha: float) -> np.ndarray:
    w = window_width(points.shape[0], alpha)
    if w == points.shape[0]:
        return points.mean(axis=0)
    return best_window_means(np.sort(points, axis=0), w)


def la_kmeans(data, labels: Labeling, alpha: float, n_jobs: int = 1) -> CenterSet:
    """Centers from predicted labels with label error rate ``alpha``.

    For every predicted cluster and every coordinate, the cluster's values
    are sorted and the run of ``m_i - floor(alpha * m_i)`` consecutive values
    with the smallest variance is kept; its mean is the center coordinate.
    Deterministic, O(d m log m). ``n_jobs > 1`` spreads clusters over
    threads without changing the output.
    """
    data = as_dataset(data)
    alpha = check_alpha(alpha)
    check_labels(data, labels)
    groups = labels.clusters()
    pts = data.points

    def work(idx):
        return _cluster_center(pts[idx], alpha)

    if n_jobs > 1 and labels.k > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            rows = list(pool.map(work, groups))
    else:
        rows = [work(idx) for idx in groups]
    return CenterSet(np.vstack(rows))
