"""Learning-augmented k-medians: anchor sampling, clipping, geometric median."""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

from .core import (CenterSet, DomainError, Labeling, as_dataset, check_alpha,
                   check_labels)
from .geomedian import MedianConfig, geometric_median


@dataclass(frozen=True)
class KMediansConfig:
    alpha: float
    delta: float = 0.1
    rounds_override: int | None = None
    seed: int = 0
    median_config: MedianConfig = field(default_factory=MedianConfig)

    def __post_init__(self):
        check_alpha(self.alpha)
        if not 0 < self.delta < 1:
            raise DomainError(f"delta must lie in (0, 1), got {self.delta}")
        if self.rounds_override is not None and self.rounds_override < 1:
            raise DomainError("rounds_override must be a positive integer")


def rounds(alpha: float, k: int, delta: float) -> int:
    """Repetitions per cluster: ceil(2 / (1 - 2 alpha) * ln(2k / delta))."""
    a = check_alpha(alpha)
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if not 0 < delta < 1:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    r = 2.0 / (1 - 2 * a) * math.log(2 * k / delta)
    # absorb round-off so that exact integers are not bumped up by one
    return max(1, math.ceil(r - 1e-9))


def clip_count(cluster_size: int, alpha: float) -> int:
    """Points removed per round: ceil(alpha * m), never the whole cluster."""
    m = int(cluster_size)
    if m < 1:
        raise DomainError(f"cluster size must be >= 1, got {m}")
    a = check_alpha(alpha)
    return min(math.ceil(a * m - 1e-9), m - 1)


def factor_kmedians(alpha: float) -> float:
    a = check_alpha(alpha)
    return 1 + a * (7 + 10 * a - 10 * a * a) / ((1 - a) * (1 - 2 * a))


def round_rng(seed: int, cluster: int, rnd: int) -> np.random.Generator:
    """Independent stream per (seed, cluster, round)."""
    return np.random.default_rng([int(seed) & (2**64 - 1), cluster, rnd])


def clip(points: np.ndarray, anchor: np.ndarray, n_remove: int) -> np.ndarray:
    """Row indices kept after dropping the ``n_remove`` points farthest from ``anchor``.

    Among equal distances the larger index is dropped first. The kept indices
    are returned in increasing order.
    """
    n = points.shape[0]
    if n_remove == 0:
        return np.arange(n)
    dist = np.sqrt(((points - anchor) ** 2).sum(axis=1))
    order = np.lexsort((-np.arange(n), -dist))
    return np.sort(order[n_remove:])


@dataclass
class ClusterTrace:
    """Per-round record for one cluster: anchors, candidates and their costs."""
    anchors: list = field(default_factory=list)
    candidates: list = field(default_factory=list)
    costs: list = field(default_factory=list)
    chosen: int = 0


def one_median(points: np.ndarray, cluster: int, n_rounds: int, alpha: float,
               seed: int, median_config: MedianConfig) -> ClusterTrace:
    m = points.shape[0]
    n_remove = clip_count(m, alpha)
    trace = ClusterTrace()
    best = math.inf
    for r in range(n_rounds):
        a = int(round_rng(seed, cluster, r).integers(m))
        keep = points[clip(points, points[a], n_remove)]
        c = geometric_median(keep, median_config)
        cost = float(np.sqrt(((keep - c) ** 2).sum(axis=1)).sum())
        trace.anchors.append(a)
        trace.candidates.append(c)
        trace.costs.append(cost)
        if cost < best:
            best = cost
            trace.chosen = r
    return trace


def la_kmedians(data, labels: Labeling, config: KMediansConfig,
                return_traces: bool = False):
    """k-medians centers from predicted labels with error rate ``config.alpha``.

    Each predicted cluster runs R rounds: draw an anchor uniformly from the
    cluster, drop the ceil(alpha * m_i) members farthest from it, and take the
    geometric median of the rest. The candidate with the lowest cost on its
    own clipped set wins (earliest round on ties).
    """
    data = as_dataset(data)
    check_labels(data, labels)
    n_rounds = config.rounds_override or rounds(config.alpha, labels.k, config.delta)
    traces = []
    for i, idx in enumerate(labels.clusters()):
        traces.append(one_median(data.points[idx], i, n_rounds, config.alpha,
                                 config.seed, config.median_config))
    centers = CenterSet(np.vstack([t.candidates[t.chosen] for t in traces]))
    if return_traces:
        return centers, traces
    return centers
