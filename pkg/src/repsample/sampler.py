"""High-level estimator tying the pipeline together.

`RepresentativeSampler` follows the scikit-learn convention: constructor
arguments are stored verbatim, `fit` analyzes and stratifies the population
and resolves the sampling plan, `sample` performs the iterated draws.
"""

from __future__ import annotations

from typing import Mapping

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._rng import derive_seed
from ._validation import check_seed
from .composition import compose
from .dataset import (
    CATEGORICAL,
    DEFAULT_MISSING_TOKENS,
    NUMERICAL,
    Dataset,
    VariableSpec,
    bind_variable,
)
from .engine import DEFAULT_ITERATIONS, IterationReport, SampleResult, iterate_and_select
from .exceptions import ConfigError
from .kmeans import DEFAULT_K_RANGE, DEFAULT_RESTARTS, select_num_clusters
from .sizing import RELATIVE_TO_MEAN, SizingParams, build_plan
from .strata import stratify_categorical, stratify_numeric
from .variables import preprocess_categorical, preprocess_numeric


def _normalize_variables(variables) -> list[VariableSpec]:
    if not variables:
        raise ConfigError("at least one variable is required")
    specs = []
    if isinstance(variables, Mapping):
        items = variables.items()
    else:
        items = []
        for entry in variables:
            if isinstance(entry, VariableSpec):
                specs.append(entry)
                continue
            if isinstance(entry, str):
                if ":" not in entry:
                    raise ConfigError(
                        f"variable {entry!r} must look like 'name:numerical' "
                        "or 'name:categorical'"
                    )
                name, kind = entry.rsplit(":", 1)
                items.append((name, kind))
            else:
                name, kind = entry
                items.append((name, kind))
    for name, kind in items:
        specs.append(VariableSpec(column=name, kind=kind))
    return specs


class RepresentativeSampler(BaseEstimator):
    """Builds a representative stratified sample of a tabular population.

    Parameters
    ----------
    variables : mapping, or list of "name:kind" / (name, kind) / VariableSpec
        Variables of interest; kind is "numerical" or "categorical".
    epsilon : float, default=0.05
        Margin of error. For numerical variables it is resolved according
        to `epsilon_mode`; for categorical and composed targets it lives on
        the proportion scale and is always absolute.
    epsilon_mode : {"relative_to_mean", "absolute"}, default="relative_to_mean"
    confidence : float, default=0.95
    n_clusters : int or None, default=None
        Cluster count for numerical variables; None selects it with the
        elbow rule over `k_range`.
    k_range : tuple of (int, int), default=(1, 10)
    n_iterations : int, default=5
        Number of candidate draws; the best one by the quality criterion
        is kept.
    sample_size : int or None, default=None
        Explicit total sample size, bypassing margin-of-error sizing.
    n_restarts : int, default=10
        k-means++ restarts per clustering.
    missing_tokens : sequence of str
        Cell values treated as missing when building a Dataset from raw
        columns.
    random_state : int, default=0

    Attributes
    ----------
    dataset_ : Dataset
    variables_ : list of CleanNumericVariable or CleanCategoricalVariable
    stratification_ : Stratification
    elbow_k_ : dict mapping numerical variable name to the selected k
    plan_ : SamplingPlan
    iteration_report_ : IterationReport, set by `sample`
    sample_result_ : SampleResult, set by `sample`
    """

    def __init__(
        self,
        variables=None,
        epsilon=0.05,
        epsilon_mode=RELATIVE_TO_MEAN,
        confidence=0.95,
        n_clusters=None,
        k_range=DEFAULT_K_RANGE,
        n_iterations=DEFAULT_ITERATIONS,
        sample_size=None,
        n_restarts=DEFAULT_RESTARTS,
        missing_tokens=DEFAULT_MISSING_TOKENS,
        random_state=0,
    ):
        self.variables = variables
        self.epsilon = epsilon
        self.epsilon_mode = epsilon_mode
        self.confidence = confidence
        self.n_clusters = n_clusters
        self.k_range = k_range
        self.n_iterations = n_iterations
        self.sample_size = sample_size
        self.n_restarts = n_restarts
        self.missing_tokens = missing_tokens
        self.random_state = random_state

    def _as_dataset(self, X) -> Dataset:
        if isinstance(X, Dataset):
            return X
        try:
            columns = {str(k): X[k] for k in X.keys()} if hasattr(X, "keys") else dict(X)
        except Exception as exc:
            raise ConfigError(
                "X must be a Dataset, a mapping of columns, or a DataFrame"
            ) from exc
        return Dataset.from_columns(columns, missing_tokens=self.missing_tokens)

    def analyze(self, X):
        """Run preprocessing and stratification (no plan, no draws)."""
        ds = self._as_dataset(X)
        specs = _normalize_variables(self.variables)
        seed = check_seed(self.random_state)

        clean = []
        strats = []
        elbow_k = {}
        for pos, spec in enumerate(specs):
            bound = bind_variable(ds, spec)
            if spec.kind == NUMERICAL:
                var = preprocess_numeric(bound)
                var_seed = derive_seed(seed, pos)
                k = self.n_clusters
                if k is None:
                    k = select_num_clusters(
                        var.values,
                        k_range=self.k_range,
                        seed=var_seed,
                        restarts=self.n_restarts,
                    )
                elbow_k[var.name] = int(k)
                strats.append(
                    stratify_numeric(var, k=int(k), seed=var_seed, restarts=self.n_restarts)
                )
            else:
                var = preprocess_categorical(bound)
                strats.append(stratify_categorical(var))
            clean.append(var)

        self.dataset_ = ds
        self.variables_ = clean
        self.elbow_k_ = elbow_k
        self.stratification_ = compose(strats)
        return self

    def fit(self, X, y=None):
        """Analyze the population and resolve the sampling plan."""
        self.analyze(X)
        params = None
        if self.sample_size is None:
            params = SizingParams(
                epsilon=self.epsilon,
                confidence=self.confidence,
                epsilon_mode=self.epsilon_mode,
            )
        self.plan_ = build_plan(
            self.stratification_,
            params=params,
            sample_size=self.sample_size,
            confidence=self.confidence,
        )
        return self

    def sample(self) -> SampleResult:
        """Draw `n_iterations` candidate samples and keep the best one."""
        check_is_fitted(self, "plan_")
        report: IterationReport = iterate_and_select(
            self.stratification_,
            self.plan_,
            iterations=self.n_iterations,
            seed=check_seed(self.random_state),
        )
        self.iteration_report_ = report
        self.sample_result_ = report.best
        return self.sample_result_

    def fit_sample(self, X, y=None) -> SampleResult:
        return self.fit(X, y).sample()

    def sample_row_positions(self) -> list[int]:
        """Source-order row positions of the chosen sample."""
        check_is_fitted(self, "sample_result_")
        ids = self.sample_result_.all_selected_ids()
        return sorted(self.dataset_.positions_for_ids(ids.tolist()))
