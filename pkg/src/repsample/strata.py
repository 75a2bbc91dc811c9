"""Stratifications: disjoint, exhaustive partitions of the population.

Numerical variables are stratified by 1-D k-means clusters; categorical
variables by their categories (including the reserved missing category).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kmeans import DEFAULT_RESTARTS, kmeans_1d
from .variables import CleanCategoricalVariable, CleanNumericVariable

NUMERIC = "numeric"
CATEGORIC = "categorical"
COMPOSED = "composed"


def _format_bound(v: float) -> str:
    if math.isfinite(v) and float(v).is_integer():
        return str(int(v))
    return format(v, ".6g")


def _std_ddof1(values: np.ndarray) -> float:
    # singleton strata have zero spread by convention, keeping sizing finite
    if values.size <= 1:
        return 0.0
    return float(np.std(values, ddof=1))


@dataclass(eq=False)
class Stratum:
    """One cell of a stratification.

    `mean`/`std` are set for single-variable numerical strata; `numeric_means`
    and `numeric_stds` carry the same information keyed by variable name and
    are also filled for composed strata (one entry per numerical input).
    """

    id: int
    label: str
    member_ids: np.ndarray
    size: int
    proportion: float
    mean: float | None = None
    std: float | None = None
    numeric_means: dict[str, float] = field(default_factory=dict)
    numeric_stds: dict[str, float] = field(default_factory=dict)


@dataclass(eq=False)
class Stratification:
    """A partition of observation ids into strata."""

    variables: tuple[str, ...]
    strata: tuple[Stratum, ...]
    population_size: int
    kind: str  # "numeric" | "categorical" | "composed"
    numeric_sources: tuple[CleanNumericVariable, ...] = ()

    def population_mean(self, variable: str) -> float:
        """Proportion-weighted mean of `variable` over the stratified universe."""
        return float(
            sum(s.proportion * s.numeric_means[variable] for s in self.strata)
        )

    def proportions(self) -> dict[int, float]:
        return {s.id: s.proportion for s in self.strata}


def stratify_numeric(
    var: CleanNumericVariable,
    k: int,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> Stratification:
    """Cluster the variable into k strata, ordered by ascending centroid."""
    result = kmeans_1d(var.values, k, seed=seed, restarts=restarts)
    ids = np.asarray(var.kept_ids)
    n_total = int(ids.size)
    strata = []
    for j in range(k):
        mask = result.assignments == j
        members = np.sort(ids[mask])
        vals = var.values[mask]
        strata.append(
            Stratum(
                id=j,
                label=f"[{_format_bound(vals.min())}, {_format_bound(vals.max())}]",
                member_ids=members,
                size=int(members.size),
                proportion=members.size / n_total,
                mean=float(vals.mean()),
                std=_std_ddof1(vals),
                numeric_means={var.name: float(vals.mean())},
                numeric_stds={var.name: _std_ddof1(vals)},
            )
        )
    return Stratification(
        variables=(var.name,),
        strata=tuple(strata),
        population_size=n_total,
        kind=NUMERIC,
        numeric_sources=(var,),
    )


def stratify_categorical(var: CleanCategoricalVariable) -> Stratification:
    """One stratum per category, ordered by label for a stable layout."""
    members: dict[str, list] = {label: [] for label, _ in var.categories}
    for rid, label in zip(var.kept_ids, var.values):
        members[label].append(rid)
    n_total = len(var.kept_ids)
    strata = []
    for j, label in enumerate(sorted(members)):
        ids = np.sort(np.asarray(members[label]))
        strata.append(
            Stratum(
                id=j,
                label=label,
                member_ids=ids,
                size=int(ids.size),
                proportion=ids.size / n_total,
            )
        )
    return Stratification(
        variables=(var.name,),
        strata=tuple(strata),
        population_size=n_total,
        kind=CATEGORIC,
    )
