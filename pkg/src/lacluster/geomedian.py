"""Geometric median by Weiszfeld iteration with the Vardi-Zhang fix."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import EmptyClusterError, ValidationError


@dataclass(frozen=True)
class MedianConfig:
    """Stopping rule for :func:`geometric_median`.

    ``singularity_eps`` is relative: a data point closer than
    ``singularity_eps * scale`` to the iterate counts as coincident, where
    ``scale`` is the mean distance to the initial (mean) iterate.
    """

    tol: float = 1e-9
    max_iter: int = 1000
    singularity_eps: float = 1e-12

    def __post_init__(self):
        if not self.tol > 0:
            raise ValidationError(f"tol must be > 0, got {self.tol}")
        if self.max_iter < 1:
            raise ValidationError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.singularity_eps < 0:
            raise ValidationError("singularity_eps must be >= 0")


@dataclass
class WeiszfeldResult:
    median: np.ndarray
    cost: float
    n_iter: int
    converged: bool
    costs: list = field(default_factory=list)


def _cost(points, y):
    return float(np.sqrt(((points - y) ** 2).sum(axis=1)).sum())


def weiszfeld(points, config: MedianConfig | None = None) -> WeiszfeldResult:
    """Run Weiszfeld from the coordinate-wise mean, keeping the cost trace.

    ``costs[t]`` is the sum of distances at the t-th iterate, starting with
    the mean. Iteration stops when the relative cost improvement drops below
    ``config.tol``. The returned median is whichever is cheaper of the final
    iterate and its nearest data point, which makes the result exact when
    the optimum sits on a data point (where Weiszfeld slows down).
    """
    cfg = config or MedianConfig()
    x = np.asarray(points, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    if x.shape[0] == 0:
        raise EmptyClusterError("geometric median of no points")
    n = x.shape[0]
    if n == 1:
        return WeiszfeldResult(x[0].copy(), 0.0, 0, True, [0.0])

    y = x.mean(axis=0)
    dist = np.sqrt(((x - y) ** 2).sum(axis=1))
    cur = float(dist.sum())
    costs = [cur]
    if cur == 0.0:
        return WeiszfeldResult(y, 0.0, 0, True, costs)
    eps = cfg.singularity_eps * cur / n

    converged = False
    it = 0
    while it < cfg.max_iter:
        it += 1
        near = dist <= eps
        far = ~near
        inv = 1.0 / dist[far]
        t_tilde = (x[far] * inv[:, None]).sum(axis=0) / inv.sum()
        eta = int(near.sum())
        if eta:
            # Vardi-Zhang: blend the reweighted average with the current point
            r = np.linalg.norm(((x[far] - y) * inv[:, None]).sum(axis=0))
            if r <= eta:
                converged = True
                break
            y_new = (1 - eta / r) * t_tilde + (eta / r) * y
        else:
            y_new = t_tilde
        d_new = np.sqrt(((x - y_new) ** 2).sum(axis=1))
        new = float(d_new.sum())
        if new > cur:
            # round-off only; keep the better iterate
            converged = True
            break
        y, dist, prev, cur = y_new, d_new, cur, new
        costs.append(cur)
        if prev - cur < cfg.tol * prev:
            converged = True
            break

    j = int(np.argmin(dist))
    c_pt = _cost(x, x[j])
    if c_pt < cur:
        y, cur = x[j].copy(), c_pt
        costs.append(cur)
    return WeiszfeldResult(y, cur, it, converged, costs)


def geometric_median(points, config: MedianConfig | None = None) -> np.ndarray:
    """Point minimising the sum of Euclidean distances to ``points``."""
    return weiszfeld(points, config).median
