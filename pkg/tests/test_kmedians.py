from fractions import Fraction
import math

import numpy as np
import pytest

from lacluster.core import DomainError, EmptyClusterError, Labeling
from lacluster.geomedian import geometric_median
from lacluster.kmedians import (KMediansConfig, clip, clip_count, factor_kmedians,
                                la_kmedians, rounds)


@pytest.mark.parametrize("alpha, k, delta, expected", [
    (0.0, 1, 2 / math.e ** 2, 4),
    (0.1, 10, 0.1, 14),
    (0.49, 10, 0.1, 530),
    (0.0, 1, 0.99, 2),
])
def test_rounds(alpha, k, delta, expected):
    assert rounds(alpha, k, delta) == expected


@pytest.mark.parametrize("args", [(0.5, 1, 0.1), (0.1, 0, 0.1), (0.1, 1, 0.0), (0.1, 1, 1.0)])
def test_rounds_domain(args):
    with pytest.raises(DomainError):
        rounds(*args)


@pytest.mark.parametrize("m, alpha, expected", [(10, 0.25, 3), (1, 0.3, 0), (50, 0.0, 0),
                                                (10, 0.3, 3), (2, 0.49, 1)])
def test_clip_count(m, alpha, expected):
    assert clip_count(m, alpha) == expected


def _exact(a: Fraction) -> Fraction:
    return 1 + a * (7 + 10 * a - 10 * a * a) / ((1 - a) * (1 - 2 * a))


@pytest.mark.parametrize("alpha", [Fraction(0), Fraction(1, 10), Fraction(1, 4), Fraction(2, 5)])
def test_factor(alpha):
    assert factor_kmedians(float(alpha)) == pytest.approx(float(_exact(alpha)), rel=1e-14)


def test_factor_examples():
    assert factor_kmedians(0) == 1.0
    assert factor_kmedians(0.1) == pytest.approx(2.0972, abs=1e-4)
    assert factor_kmedians(0.25) == pytest.approx(6.9167, abs=1e-4)


def test_clip_ties_drop_larger_index_first():
    pts = np.array([[1.0], [-1.0], [0.0], [1.0], [-1.0]])
    kept = clip(pts, np.array([0.0]), 2)
    # four points at distance 1: indices 4 and 3 go first
    assert kept.tolist() == [0, 1, 2]


def test_alpha_zero_is_geometric_median():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(60, 2))
    lab = Labeling(rng.integers(0, 3, 60), 3)
    c = la_kmedians(x, lab, KMediansConfig(alpha=0.0, seed=9)).centers
    for i in range(3):
        assert np.array_equal(c[i], geometric_median(x[lab.members(i)]))


def test_outlier_enumerated_anchors():
    pts = np.array([[0.0], [1.0], [2.0], [1000.0]])
    lab = Labeling(np.zeros(4, int), 1)
    c, traces = la_kmedians(pts, lab, KMediansConfig(alpha=0.25, rounds_override=60, seed=3),
                            return_traces=True)
    assert c.centers[0, 0] == pytest.approx(1.0, abs=1e-6)
    # per-anchor candidates: anchors 0, 1, 2 clip 1000; anchor 1000 clips 0
    by_anchor = {}
    for a, cand, cost in zip(traces[0].anchors, traces[0].candidates, traces[0].costs):
        by_anchor[a] = (cand[0], cost)
    assert set(by_anchor) == {0, 1, 2, 3}
    for a in (0, 1, 2):
        assert by_anchor[a][0] == pytest.approx(1.0, abs=1e-6)
        assert by_anchor[a][1] == pytest.approx(2.0, abs=1e-6)
    assert by_anchor[3][0] == pytest.approx(2.0, abs=1e-6)
    assert by_anchor[3][1] == pytest.approx(999.0, abs=1e-6)


def test_singleton_cluster():
    x = np.array([[1.0, 2.0], [5.0, 5.0], [6.0, 5.0]])
    c = la_kmedians(x, Labeling(np.array([0, 1, 1]), 2), KMediansConfig(alpha=0.3))
    assert c.centers[0].tolist() == [1.0, 2.0]


def test_survivor_count_and_chosen_is_min():
    rng = np.random.default_rng(4)
    x = rng.standard_t(2, size=(120, 3))
    lab = Labeling(rng.integers(0, 2, 120), 2)
    cfg = KMediansConfig(alpha=0.3, seed=11)
    _, traces = la_kmedians(x, lab, cfg, return_traces=True)
    for i, t in enumerate(traces):
        assert len(t.costs) == rounds(0.3, 2, 0.1)
        assert t.chosen == int(np.argmin(t.costs))
        m = lab.sizes()[i]
        for a in t.anchors:
            members = x[lab.members(i)]
            assert len(clip(members, members[a], clip_count(m, 0.3))) == m - clip_count(m, 0.3)


def test_seed_determinism():
    rng = np.random.default_rng(5)
    x = rng.normal(size=(200, 2))
    lab = Labeling(rng.integers(0, 4, 200), 4)
    cfg = KMediansConfig(alpha=0.2, seed=1234)
    a = la_kmedians(x, lab, cfg).centers
    b = la_kmedians(x, lab, cfg).centers
    assert a.tobytes() == b.tobytes()
    c = la_kmedians(x, lab, KMediansConfig(alpha=0.2, seed=1235)).centers
    assert a.tobytes() != c.tobytes()


def test_errors():
    x = np.zeros((3, 1))
    with pytest.raises(EmptyClusterError):
        la_kmedians(x, Labeling(np.array([0, 0, 0]), 2), KMediansConfig(alpha=0.1))
    with pytest.raises(DomainError):
        KMediansConfig(alpha=0.5)
    with pytest.raises(DomainError):
        KMediansConfig(alpha=0.1, delta=1.5)
