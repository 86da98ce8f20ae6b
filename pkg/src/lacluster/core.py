"""Domain types, cost kernels and validation shared by every algorithm."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Chunk size (rows) for point-to-center distance evaluation.
_CHUNK = 4096


class ValidationError(ValueError):
    """Input rejected before any computation (exit code 2 in the CLI)."""


class ShapeError(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class EmptyClusterError(ValidationError):
    pass


class WidthError(ValidationError):
    pass


@dataclass(frozen=True)
class Dataset:
    """An m x d matrix of finite points."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2:
            raise ShapeError(f"points must be 2-D, got ndim={pts.ndim}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ShapeError(f"points must be non-empty, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValidationError("points contain NaN or Inf")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class Labeling:
    """Assignment of each point to a cluster id in ``range(k)``."""

    assign: np.ndarray
    k: int

    def __post_init__(self):
        a = np.asarray(self.assign)
        if a.ndim != 1:
            raise ShapeError("labels must be 1-D")
        if a.size and not np.issubdtype(a.dtype, np.integer):
            if not np.all(np.equal(np.mod(a, 1), 0)):
                raise ValidationError("labels must be integers")
        a = a.astype(np.int64, copy=True)
        k = int(self.k)
        if k < 1:
            raise DomainError(f"k must be >= 1, got {k}")
        if a.size and (a.min() < 0 or a.max() >= k):
            bad = int(np.flatnonzero((a < 0) | (a >= k))[0])
            raise ValidationError(
                f"label {int(a[bad])} at row {bad} outside [0, {k})")
        a.setflags(write=False)
        object.__setattr__(self, "assign", a)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_array(cls, assign, k: int | None = None) -> "Labeling":
        a = np.asarray(assign, dtype=np.int64)
        if k is None:
            k = int(a.max()) + 1 if a.size else 1
        return cls(a, k)

    @property
    def m(self) -> int:
        return self.assign.shape[0]

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assign, minlength=self.k)

    def members(self, i: int) -> np.ndarray:
        """Indices of cluster ``i`` in increasing order."""
        return np.flatnonzero(self.assign == i)

    def clusters(self) -> list[np.ndarray]:
        order = np.argsort(self.assign, kind="stable")
        bounds = np.cumsum(self.sizes())[:-1]
        return np.split(order, bounds)


@dataclass(frozen=True)
class CenterSet:
    centers: np.ndarray

    def __post_init__(self):
        c = np.array(self.centers, dtype=np.float64)
        if c.ndim == 1:
            c = c.reshape(-1, 1)
        if c.ndim != 2 or c.shape[0] < 1:
            raise ShapeError(f"centers must be a non-empty k x d array, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValidationError("centers contain NaN or Inf")
        c.setflags(write=False)
        object.__setattr__(self, "centers", c)

    @property
    def k(self) -> int:
        return self.centers.shape[0]

    @property
    def d(self) -> int:
        return self.centers.shape[1]


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 <= alpha < 0.5):
        raise DomainError(f"alpha must lie in [0, 0.5), got {alpha}")
    return alpha


def as_dataset(data) -> Dataset:
    return data if isinstance(data, Dataset) else Dataset(data)


def as_centers(centers) -> CenterSet:
    return centers if isinstance(centers, CenterSet) else CenterSet(centers)


def check_labels(data: Dataset, labels: Labeling, require_nonempty=True) -> None:
    if labels.m != data.m:
        raise ShapeError(f"{labels.m} labels for {data.m} points")
    if require_nonempty:
        sizes = labels.sizes()
        if np.any(sizes == 0):
            raise EmptyClusterError(
                f"cluster {int(np.flatnonzero(sizes == 0)[0])} is empty")


def _check_dims(data: Dataset, centers: CenterSet) -> None:
    if data.d != centers.d:
        raise ShapeError(f"data has d={data.d} but centers have d={centers.d}")


def sq_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances, shape (len(points), len(centers))."""
    diff = points[:, None, :] - centers[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def assign_nearest(data, centers, squared=True) -> tuple[np.ndarray, np.ndarray]:
    """Nearest center per point (ties to the lowest index) and its distance.

    Distances are squared when ``squared`` is true, plain Euclidean otherwise.
    """
    data, centers = as_dataset(data), as_centers(centers)
    _check_dims(data, centers)
    pts, c = data.points, centers.centers
    idx = np.empty(data.m, dtype=np.int64)
    dist = np.empty(data.m)
    for lo in range(0, data.m, _CHUNK):
        d2 = sq_distances(pts[lo:lo + _CHUNK], c)
        j = np.argmin(d2, axis=1)
        idx[lo:lo + _CHUNK] = j
        dist[lo:lo + _CHUNK] = d2[np.arange(len(j)), j]
    if not squared:
        dist = np.sqrt(dist)
    return idx, dist


def cost_kmeans(data, centers) -> float:
    """Sum over points of the squared distance to the nearest center."""
    return float(np.sum(assign_nearest(data, centers, squared=True)[1]))


def cost_kmedians(data, centers) -> float:
    """Sum over points of the Euclidean distance to the nearest center."""
    return float(np.sum(assign_nearest(data, centers, squared=False)[1]))


def cost(data, centers, objective: str) -> float:
    if objective == "means":
        return cost_kmeans(data, centers)
    if objective == "medians":
        return cost_kmedians(data, centers)
    raise DomainError(f"unknown objective {objective!r}")


def cluster_mean(data, subset) -> np.ndarray:
    data = as_dataset(data)
    subset = np.asarray(subset, dtype=np.int64)
    if subset.size == 0:
        raise EmptyClusterError("mean of an empty subset")
    if subset.min() < 0 or subset.max() >= data.m:
        raise ShapeError("subset index out of range")
    return data.points[subset].mean(axis=0)


def one_means_cost(values, total: float, total_sq: float) -> float:
    """1-means cost of a slice from its sum and sum of squares.

    ``total`` and ``total_sq`` must be the slice's exact sum and sum of
    squares. Negative round-off is clamped to zero.
    """
    n = len(values)
    if n == 0:
        raise EmptyClusterError("1-means cost of an empty slice")
    return max(0.0, float(total_sq) - float(total) ** 2 / n)


def per_cluster_cost(data, labels: Labeling, centers, objective: str) -> float:
    """Cost of each labelled cluster against its own center, summed.

    This is sum_i cost(P_i, c_i) with the partition held fixed, as opposed
    to the min-over-centers assignment of :func:`cost`.
    """
    data, centers = as_dataset(data), as_centers(centers)
    check_labels(data, labels, require_nonempty=False)
    _check_dims(data, centers)
    if centers.k != labels.k:
        raise ShapeError(f"{centers.k} centers for k={labels.k}")
    diff = data.points - centers.centers[labels.assign]
    d2 = np.einsum("ij,ij->i", diff, diff)
    if objective == "means":
        return float(d2.sum())
    if objective == "medians":
        return float(np.sqrt(d2).sum())
    raise DomainError(f"unknown objective {objective!r}")
