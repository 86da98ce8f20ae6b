import numpy as np
import pytest

from lacluster.baselines import (default_q_grid, kmeanspp_init, kmedoids_alternating,
                                 lloyd, predictor_naive, sampling_baseline)
from lacluster.core import (DomainError, Labeling, ValidationError, cost_kmeans,
                            cost_kmedians)
from lacluster.geomedian import geometric_median


@pytest.fixture
def blobs():
    rng = np.random.default_rng(0)
    x = np.vstack([rng.normal(c, 0.5, size=(40, 2)) for c in ([0, 0], [6, 0], [0, 6])])
    return x


def test_kmeanspp_k_equals_m_picks_every_point():
    x = np.random.default_rng(1).normal(size=(12, 3))
    c = kmeanspp_init(x, 12, seed=5).centers
    assert sorted(map(tuple, c)) == sorted(map(tuple, x))


def test_kmeanspp_with_duplicates_still_distinct_rows():
    x = np.array([[0.0], [0.0], [1.0]])
    c = kmeanspp_init(x, 3, seed=0).centers
    assert sorted(c.ravel().tolist()) == [0.0, 0.0, 1.0]


def test_kmeanspp_k1_and_determinism(blobs):
    a = kmeanspp_init(blobs, 1, seed=3).centers
    assert any(np.array_equal(a[0], p) for p in blobs)
    assert np.array_equal(kmeanspp_init(blobs, 3, seed=3).centers,
                          kmeanspp_init(blobs, 3, seed=3).centers)
    with pytest.raises(DomainError):
        kmeanspp_init(blobs, len(blobs) + 1)


def test_lloyd_two_blobs():
    x = np.array([[0.0], [1.0], [100.0], [101.0]])
    c, lab = lloyd(x, [[0.0], [100.0]])
    assert c.centers.ravel().tolist() == [0.5, 100.5]
    assert lab.assign.tolist() == [0, 0, 1, 1]


def test_lloyd_fixed_point_unchanged():
    x = np.array([[0.0], [1.0], [100.0], [101.0]])
    c, _, costs = lloyd(x, [[0.5], [100.5]], return_costs=True)
    assert c.centers.ravel().tolist() == [0.5, 100.5]
    assert len(costs) == 2


def test_lloyd_monotone_and_reseeds(blobs):
    # all init centers on one side so some clusters start empty
    init = np.array([[0.0, 0.0], [50.0, 50.0], [60.0, 60.0]])
    c, lab, costs = lloyd(blobs, init, return_costs=True)
    assert all(b <= a * (1 + 1e-12) for a, b in zip(costs, costs[1:]))
    assert np.all(lab.sizes() > 0)
    assert costs[-1] == pytest.approx(cost_kmeans(blobs, c))


def test_kmedoids_examples():
    x = np.random.default_rng(2).normal(size=(7, 2))
    c, _ = kmedoids_alternating(x, 7, seed=0)
    assert cost_kmedians(x, c) == 0.0
    c, _ = kmedoids_alternating(np.array([[0.0], [1.0], [10.0]]), 1, seed=0)
    assert c.centers.tolist() == [[1.0]]


def test_kmedoids_monotone_and_on_data(blobs):
    c, lab, costs = kmedoids_alternating(blobs, 3, seed=4, return_costs=True)
    assert all(b <= a * (1 + 1e-12) for a, b in zip(costs, costs[1:]))
    for row in c.centers:
        assert any(np.array_equal(row, p) for p in blobs)
    with pytest.raises(DomainError):
        kmedoids_alternating(blobs, 1000)


def test_predictor_naive():
    x = np.array([[0.0, 0.0], [2.0, 2.0]])
    assert predictor_naive(x, Labeling(np.array([0, 0]), 1)).centers.tolist() == [[1.0, 1.0]]
    y = np.array([[0.0], [1.0], [10.0]])
    med = predictor_naive(y, Labeling(np.array([0, 0, 0]), 1), "medians").centers
    assert med[0, 0] == pytest.approx(1.0, abs=1e-6)


def test_sampling_full_fraction_matches_naive(blobs):
    lab = Labeling(np.repeat(np.arange(3), 40), 3)
    for obj, cost in (("means", cost_kmeans), ("medians", cost_kmedians)):
        c, q = sampling_baseline(blobs, lab, obj, [1.0], seed=0)
        assert q == 1.0
        naive = predictor_naive(blobs, lab, obj)
        assert cost(blobs, c) == cost(blobs, naive)


def test_sampling_grid(blobs):
    lab = Labeling(np.repeat(np.arange(3), 40), 3)
    grid = default_q_grid()
    assert len(grid) == 15 and grid[0] == 0.01 and grid[-1] == 0.5
    c, q = sampling_baseline(blobs, lab, "means", seed=1)
    assert q in grid
    a, _ = sampling_baseline(blobs, lab, "means", seed=1)
    assert np.array_equal(a.centers, c.centers)
    with pytest.raises(ValidationError):
        sampling_baseline(blobs, lab, "means", [])
    with pytest.raises(DomainError):
        sampling_baseline(blobs, lab, "means", [0.0])
