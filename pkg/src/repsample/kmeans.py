"""One-dimensional k-means with seeded restarts and elbow-based model selection.

Lloyd's algorithm over sorted centroids: in 1-D the nearest-centroid rule
is equivalent to bucketing against centroid midpoints, which keeps each
iteration O(n log k) and guarantees clusters are contiguous intervals of
the sorted values.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from ._rng import generator
from ._validation import check_seed, check_values_1d
from .exceptions import ConfigError, DegenerateInputError, DegenerateInputWarning

DEFAULT_MAX_ITER = 300
DEFAULT_RESTARTS = 10
DEFAULT_K_RANGE = (1, 10)


@dataclass(eq=False)
class KMeansResult:
    k: int
    centroids: np.ndarray  # sorted ascending
    assignments: np.ndarray  # index into `centroids`, one per observation
    wcss: float


def _assign(x: np.ndarray, centers: np.ndarray) -> np.ndarray:
    # centers must be sorted; equidistant points go to the lower-index centroid
    mids = (centers[1:] + centers[:-1]) / 2.0
    return np.searchsorted(mids, x, side="left")


def _repair_empty(x, centers, assign, counts):
    """Reseed empty clusters with the point farthest from its centroid.

    Relocation targets are forced onto values not already used as centers,
    so the loop terminates after at most k repairs.
    """
    k = len(centers)
    for _ in range(2 * k):
        empties = np.flatnonzero(counts == 0)
        if empties.size == 0:
            return centers, assign, counts
        dist = np.abs(x - centers[assign])
        for cand in np.argsort(-dist, kind="stable"):
            value = x[cand]
            if not np.any(np.isclose(centers[counts > 0], value, rtol=0.0, atol=0.0)):
                centers = centers.copy()
                centers[int(empties[0])] = value
                break
        centers = np.sort(centers)
        assign = _assign(x, centers)
        counts = np.bincount(assign, minlength=k)
    raise DegenerateInputError("k-means could not populate every cluster")


def _kmeanspp_init(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    centers = np.empty(k)
    centers[0] = x[rng.integers(x.size)]
    d2 = np.square(x - centers[0])
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            # remaining mass sits on already-chosen values; pick any unseen value
            unseen = np.setdiff1d(x, centers[:j])
            centers[j] = unseen[0]
            d2 = np.minimum(d2, np.square(x - centers[j]))
            continue
        idx = rng.choice(x.size, p=d2 / total)
        centers[j] = x[idx]
        d2 = np.minimum(d2, np.square(x - centers[j]))
    return np.sort(centers)


def _lloyd(x: np.ndarray, centers: np.ndarray, max_iter: int):
    k = len(centers)
    centers = np.sort(centers)
    assign = _assign(x, centers)
    counts = np.bincount(assign, minlength=k)
    centers, assign, counts = _repair_empty(x, centers, assign, counts)
    prev = assign
    for _ in range(max_iter):
        centers = np.bincount(assign, weights=x, minlength=k) / counts
        centers = np.sort(centers)
        assign = _assign(x, centers)
        counts = np.bincount(assign, minlength=k)
        centers, assign, counts = _repair_empty(x, centers, assign, counts)
        if np.array_equal(assign, prev):
            break
        prev = assign
    wcss = float(np.square(x - centers[assign]).sum())
    return centers, assign, wcss


def kmeans_1d(
    values,
    k: int,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    max_iter: int = DEFAULT_MAX_ITER,
) -> KMeansResult:
    """Best-of-`restarts` Lloyd's runs with k-means++ initialization.

    Restart r uses the derived seed ``seed ^ r`` so restarts are
    order-independent; wcss ties keep the lowest restart index. Centroids
    come back sorted ascending.
    """
    x = check_values_1d(values)
    seed = check_seed(seed)
    distinct = np.unique(x).size
    if k < 1:
        raise ConfigError(f"k must be at least 1, got {k}")
    if k > distinct:
        raise DegenerateInputError(
            f"k={k} exceeds the number of distinct values ({distinct})"
        )
    if restarts < 1:
        raise ConfigError(f"restarts must be at least 1, got {restarts}")

    best = None
    for r in range(restarts):
        rng = generator(seed ^ r)
        centers0 = _kmeanspp_init(x, k, rng)
        centers, assign, wcss = _lloyd(x, centers0, max_iter)
        if best is None or wcss < best[0]:
            best = (wcss, centers, assign)
    wcss, centers, assign = best
    return KMeansResult(k=k, centroids=centers, assignments=assign, wcss=wcss)


def wcss_curve(
    values,
    k_range: tuple[int, int] = DEFAULT_K_RANGE,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> list[tuple[int, float]]:
    """wcss(k) over `k_range`, clamped to the number of distinct values."""
    x = check_values_1d(values)
    distinct = np.unique(x).size
    lo, hi = int(k_range[0]), int(k_range[1])
    if lo < 1 or hi < lo:
        raise ConfigError(f"invalid k range {k_range!r}")
    hi = min(hi, distinct)
    lo = min(lo, hi)
    return [(k, kmeans_1d(x, k, seed=seed, restarts=restarts).wcss) for k in range(lo, hi + 1)]


def select_num_clusters(
    values,
    k_range: tuple[int, int] = DEFAULT_K_RANGE,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> int:
    """Pick k by maximal perpendicular distance to the wcss curve's chord.

    Both axes are min-max normalized before measuring distances. If some k
    already reaches (numerically) zero wcss the smallest such k wins: the
    curve is flat beyond it and a chord rule would be meaningless there.
    Fewer than three distinct values returns the distinct count with a
    warning.
    """
    x = check_values_1d(values)
    distinct = np.unique(x).size
    if distinct < 3:
        warnings.warn(
            f"only {distinct} distinct value(s); using one cluster per value",
            DegenerateInputWarning,
            stacklevel=2,
        )
        return distinct

    curve = wcss_curve(x, k_range=k_range, seed=seed, restarts=restarts)
    if len(curve) == 1:
        return curve[0][0]

    ks = np.array([k for k, _ in curve], dtype=float)
    ws = np.array([w for _, w in curve], dtype=float)
    zero_floor = 1e-12 * max(ws[0], np.finfo(float).tiny)
    perfect = np.flatnonzero(ws <= zero_floor)
    if perfect.size:
        return int(ks[perfect[0]])

    xn = (ks - ks[0]) / (ks[-1] - ks[0])
    span = ws.max() - ws.min()
    yn = (ws - ws.min()) / span if span > 0 else np.zeros_like(ws)
    dx, dy = xn[-1] - xn[0], yn[-1] - yn[0]
    norm = float(np.hypot(dx, dy))
    dist = np.abs(dy * (xn - xn[0]) - dx * (yn - yn[0])) / norm
    return int(ks[int(np.argmax(dist))])


class KMeans1D(ClusterMixin, BaseEstimator):
    """Scikit-learn style estimator around :func:`kmeans_1d`.

    Parameters
    ----------
    n_clusters : int, default=2
        Number of clusters.
    n_init : int, default=10
        Number of seeded k-means++ restarts; the lowest-wcss run wins.
    max_iter : int, default=300
        Lloyd iteration cap per restart.
    random_state : int, default=0
        Base seed; restart r derives its own seed from it.

    Attributes
    ----------
    cluster_centers_ : ndarray of shape (n_clusters,), sorted ascending.
    labels_ : ndarray of shape (n_samples,)
    inertia_ : float
        Within-cluster sum of squares of the best restart.
    """

    def __init__(self, n_clusters=2, n_init=DEFAULT_RESTARTS, max_iter=DEFAULT_MAX_ITER,
                 random_state=0):
        self.n_clusters = n_clusters
        self.n_init = n_init
        self.max_iter = max_iter
        self.random_state = random_state

    def fit(self, X, y=None):
        result = kmeans_1d(
            X,
            k=self.n_clusters,
            seed=check_seed(self.random_state),
            restarts=self.n_init,
            max_iter=self.max_iter,
        )
        self.cluster_centers_ = result.centroids
        self.labels_ = result.assignments
        self.inertia_ = result.wcss
        return self

    def predict(self, X):
        check_is_fitted(self, "cluster_centers_")
        x = check_values_1d(X, name="X")
        return _assign(x, self.cluster_centers_)
