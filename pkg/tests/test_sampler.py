import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from repsample import (
    ConfigError,
    Dataset,
    RepresentativeSampler,
    load_csv,
)


def _population(n=600, seed=0):
    rng = np.random.default_rng(seed)
    return {
        "likes": np.round(rng.exponential(2.0, n)),
        "type": rng.choice(["model", "dataset", "space"], n, p=[0.6, 0.2, 0.2]),
    }


def test_get_params_round_trip_and_clone():
    est = RepresentativeSampler(
        variables=["likes:numerical"], epsilon=0.1, n_clusters=3, random_state=5
    )
    params = est.get_params()
    assert params["epsilon"] == 0.1
    assert params["n_clusters"] == 3
    cloned = clone(est)
    assert cloned.get_params() == params


def test_requires_fit_before_sample():
    est = RepresentativeSampler(variables=["likes:numerical"])
    with pytest.raises(NotFittedError):
        est.sample()


def test_fit_sample_numeric(table1_csv=None):
    est = RepresentativeSampler(
        variables=["likes:numerical"],
        epsilon=0.1,
        epsilon_mode="relative_to_mean",
        n_clusters=2,
        n_iterations=5,
        random_state=1,
    )
    result = est.fit_sample(_population())
    assert est.plan_.n == result.total
    assert est.iteration_report_.chosen >= 1
    assert "likes" in result.estimates


def test_variable_forms_equivalent():
    pop = _population()
    forms = [
        ["likes:numerical", "type:categorical"],
        [("likes", "numerical"), ("type", "categorical")],
        {"likes": "numerical", "type": "categorical"},
    ]
    plans = []
    for variables in forms:
        est = RepresentativeSampler(
            variables=variables, epsilon=0.05, epsilon_mode="absolute",
            n_clusters=2, random_state=3,
        )
        est.fit(pop)
        plans.append(est.plan_.per_stratum)
    assert plans[0] == plans[1] == plans[2]


def test_composed_fit_uses_categorical_sizing():
    est = RepresentativeSampler(
        variables=["type:categorical", "likes:numerical"],
        epsilon=0.05,
        n_clusters=2,
        random_state=2,
    )
    est.fit(_population(n=2000, seed=3))
    assert est.stratification_.kind == "composed"
    assert est.plan_.n == 385


def test_explicit_sample_size():
    est = RepresentativeSampler(
        variables=["type:categorical"], sample_size=50, random_state=0
    )
    result = est.fit_sample(_population())
    assert result.total == 50


def test_elbow_used_when_n_clusters_none():
    rng = np.random.default_rng(9)
    values = np.concatenate(
        [rng.exponential(1.0, 5000), rng.uniform(2000, 2600, 90), rng.uniform(8000, 9900, 10)]
    )
    est = RepresentativeSampler(
        variables=["likes:numerical"], epsilon=0.1, random_state=4
    )
    est.fit({"likes": values})
    assert est.elbow_k_["likes"] == 3
    assert len(est.stratification_.strata) == 3


def test_requires_variables():
    with pytest.raises(ConfigError):
        RepresentativeSampler(variables=None).fit(_population())
    with pytest.raises(ConfigError):
        RepresentativeSampler(variables=["likes"]).fit(_population())


def test_sample_row_positions_map_to_source(small_csv):
    ds = load_csv(small_csv)
    est = RepresentativeSampler(
        variables=["type:categorical"], sample_size=3, random_state=0
    )
    est.fit_sample(ds)
    positions = est.sample_row_positions()
    assert len(positions) == 3
    assert positions == sorted(positions)
    assert all(0 <= p < ds.row_count for p in positions)


def test_accepts_dataframe_like():
    pd = pytest.importorskip("pandas")
    df = pd.DataFrame(_population(n=200, seed=7))
    est = RepresentativeSampler(
        variables=["type:categorical"], sample_size=20, random_state=1
    )
    result = est.fit_sample(df)
    assert result.total == 20


def test_determinism_of_fit_sample():
    pop = _population(n=800, seed=5)
    kwargs = dict(
        variables=["likes:numerical"], epsilon=0.1, n_clusters=2, random_state=42
    )
    a = RepresentativeSampler(**kwargs).fit_sample(pop)
    b = RepresentativeSampler(**kwargs).fit_sample(pop)
    for sid in a.selected:
        assert np.array_equal(a.selected[sid], b.selected[sid])
