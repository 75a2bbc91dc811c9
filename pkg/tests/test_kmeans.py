import numpy as np
import pytest
from sklearn.base import clone

from _oracles import exact_kmeans_wcss
from repsample import (
    ConfigError,
    DegenerateInputError,
    DegenerateInputWarning,
    KMeans1D,
    kmeans_1d,
    select_num_clusters,
    wcss_curve,
)


def test_two_point_masses():
    res = kmeans_1d([0, 0, 10, 10], 2, seed=1)
    assert res.centroids.tolist() == [0.0, 10.0]
    assert res.wcss == 0.0
    assert sorted(np.bincount(res.assignments).tolist()) == [2, 2]


def test_single_cluster_mean():
    res = kmeans_1d([1, 2, 3], 1, seed=0)
    assert res.centroids.tolist() == [2.0]
    assert res.wcss == pytest.approx(2.0)


def test_k_exceeding_distinct_values():
    with pytest.raises(DegenerateInputError, match="k=3.*distinct.*2"):
        kmeans_1d([1, 1, 2, 2], 3)


def test_centroids_sorted_and_assignments_consistent():
    rng = np.random.default_rng(0)
    x = rng.normal(size=300) * 10
    res = kmeans_1d(x, 4, seed=3)
    assert np.all(np.diff(res.centroids) > 0)
    # every observation sits with its nearest centroid
    dist = np.abs(x[:, None] - res.centroids[None, :])
    assert np.array_equal(res.assignments, dist.argmin(axis=1))


def test_sorted_values_give_contiguous_assignments():
    rng = np.random.default_rng(5)
    x = np.sort(rng.exponential(size=500))
    res = kmeans_1d(x, 3, seed=9)
    assert np.all(np.diff(res.assignments) >= 0)


def test_determinism():
    rng = np.random.default_rng(2)
    x = rng.normal(size=200)
    a = kmeans_1d(x, 3, seed=7, restarts=5)
    b = kmeans_1d(x, 3, seed=7, restarts=5)
    assert np.array_equal(a.assignments, b.assignments)
    assert np.array_equal(a.centroids, b.centroids)
    assert a.wcss == b.wcss


def test_close_to_exact_dp_optimum():
    rng = np.random.default_rng(123)
    for trial in range(20):
        n = int(rng.integers(5, 120))
        k = int(rng.integers(1, 5))
        x = rng.normal(size=n) * rng.uniform(0.5, 20)
        if np.unique(x).size < k:
            continue
        got = kmeans_1d(x, k, seed=trial, restarts=10).wcss
        opt = exact_kmeans_wcss(x, k)
        assert got <= 1.05 * opt + 1e-9


def test_elbow_three_point_masses():
    values = [0.0] * 100 + [50.0] * 100 + [100.0] * 100
    assert select_num_clusters(values, seed=0) == 3


def test_elbow_degenerate_inputs_warn():
    with pytest.warns(DegenerateInputWarning):
        assert select_num_clusters([4.0] * 50) == 1
    with pytest.warns(DegenerateInputWarning):
        assert select_num_clusters([1.0, 2.0] * 30) == 2


def test_elbow_skewed_population_selects_three():
    rng = np.random.default_rng(42)
    values = np.concatenate(
        [
            rng.exponential(1.0, 20_000),
            rng.uniform(2000, 2600, 180),
            rng.uniform(8000, 9900, 20),
        ]
    )
    assert select_num_clusters(values, seed=0) == 3


def test_wcss_curve_is_decreasing_on_spread_data():
    rng = np.random.default_rng(8)
    x = rng.normal(size=400)
    curve = wcss_curve(x, k_range=(1, 6), seed=1)
    ws = [w for _, w in curve]
    assert all(a >= b - 1e-9 for a, b in zip(ws, ws[1:]))


def test_estimator_api():
    rng = np.random.default_rng(1)
    x = np.concatenate([rng.normal(0, 0.5, 50), rng.normal(20, 0.5, 50)])
    est = KMeans1D(n_clusters=2, random_state=3).fit(x)
    assert est.cluster_centers_.shape == (2,)
    assert est.inertia_ >= 0
    assert est.labels_.shape == (100,)
    preds = est.predict([[-1.0], [25.0]])
    assert preds.tolist() == [0, 1]
    # sklearn conventions: params round-trip and clones are unfitted copies
    est2 = clone(est)
    assert est2.get_params() == est.get_params()
    fp = est.fit_predict(x)
    assert np.array_equal(fp, est.labels_)


def test_estimator_matches_function():
    rng = np.random.default_rng(6)
    x = rng.normal(size=150)
    est = KMeans1D(n_clusters=3, n_init=4, random_state=11).fit(x)
    res = kmeans_1d(x, 3, seed=11, restarts=4)
    assert np.allclose(est.cluster_centers_, res.centroids)
    assert est.inertia_ == res.wcss


def test_invalid_args():
    with pytest.raises(ConfigError):
        kmeans_1d([1, 2, 3], 0)
    with pytest.raises(ConfigError):
        kmeans_1d([1, 2, 3], 1, restarts=0)
    with pytest.raises(ConfigError):
        select_num_clusters([1, 2, 3, 4], k_range=(3, 2))
