"""Learning-augmented k-means and k-medians clustering."""

from .core import (CenterSet, Dataset, DomainError, EmptyClusterError, Labeling,
                   ShapeError, ValidationError, WidthError, cluster_mean, cost,
                   cost_kmeans, cost_kmedians, one_means_cost, per_cluster_cost)
from .geomedian import MedianConfig, geometric_median, weiszfeld
from .kmeans import factor_kmeans, la_kmeans
from .kmedians import (KMediansConfig, clip_count, factor_kmedians, la_kmedians,
                       rounds)
from .window import WindowResult, best_window, window_width

__version__ = "0.1.0"

__all__ = [
    "CenterSet", "Dataset", "DomainError", "EmptyClusterError", "KMediansConfig",
    "Labeling", "MedianConfig", "ShapeError", "ValidationError", "WidthError",
    "WindowResult", "best_window", "clip_count", "cluster_mean", "cost",
    "cost_kmeans", "cost_kmedians", "factor_kmeans", "factor_kmedians",
    "geometric_median", "la_kmeans", "la_kmedians", "one_means_cost",
    "per_cluster_cost", "rounds", "weiszfeld", "window_width",
]
