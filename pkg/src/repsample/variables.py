"""Per-variable preprocessing and descriptive statistics.

Numerical variables drop missing observations; categorical variables keep
every row and fold missing cells into a reserved extra category.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .dataset import BoundVariable, CATEGORICAL, NUMERICAL
from .exceptions import ConfigError, DegenerateInputError

MISSING_LABEL = "⟨missing⟩"


@dataclass(frozen=True)
class DescriptiveStats:
    """Population-level summary: std uses divisor n, quantiles interpolate
    linearly between order statistics."""

    n: int
    mean: float
    std: float
    median: float
    q1: float
    q3: float

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "mean": self.mean,
            "std": self.std,
            "median": self.median,
            "iqr": [self.q1, self.q3],
        }


class _ValueMap:
    """id -> value lookup, vectorized for dense integer row ids."""

    def __init__(self, ids, values: np.ndarray):
        ids_arr = np.asarray(ids)
        self._dense = None
        self._table = None
        if ids_arr.size and ids_arr.dtype.kind in "iu":
            span = int(ids_arr.max()) + 1
            if span <= 4 * ids_arr.size + 1024:
                dense = np.full(span, np.nan)
                dense[ids_arr] = values
                self._dense = dense
        if self._dense is None:
            self._table = dict(zip(ids, values.tolist()))

    def take(self, ids) -> np.ndarray:
        if self._dense is not None:
            return self._dense[np.asarray(ids)]
        return np.array([self._table[i] for i in ids], dtype=float)


@dataclass(eq=False)
class CleanNumericVariable:
    """A numerical variable after missing-value removal."""

    name: str
    values: np.ndarray
    kept_ids: tuple
    stats: DescriptiveStats

    @cached_property
    def value_map(self) -> _ValueMap:
        return _ValueMap(self.kept_ids, self.values)


@dataclass(eq=False)
class CleanCategoricalVariable:
    """A categorical variable with missing cells mapped to MISSING_LABEL.

    `categories` is ordered by descending count, ties broken
    lexicographically.
    """

    name: str
    values: tuple[str, ...]
    kept_ids: tuple
    categories: tuple[tuple[str, int], ...] = field(default_factory=tuple)


def describe(values: np.ndarray) -> DescriptiveStats:
    if values.size == 0:
        raise DegenerateInputError("cannot describe an empty variable")
    q1, med, q3 = np.quantile(values, [0.25, 0.5, 0.75])
    return DescriptiveStats(
        n=int(values.size),
        mean=float(np.mean(values)),
        std=float(np.std(values)),
        median=float(med),
        q1=float(q1),
        q3=float(q3),
    )


def preprocess_numeric(var: BoundVariable) -> CleanNumericVariable:
    """Drop missing entries and compute descriptive statistics."""
    if var.kind != NUMERICAL:
        raise ConfigError(f"variable {var.name!r} is not numerical")
    kept_ids = []
    kept = []
    for rid, v in zip(var.row_ids, var.values):
        if v is not None:
            kept_ids.append(rid)
            kept.append(v)
    if not kept:
        raise DegenerateInputError(f"variable {var.name!r}: all values are missing")
    values = np.asarray(kept, dtype=float)
    return CleanNumericVariable(
        name=var.name,
        values=values,
        kept_ids=tuple(kept_ids),
        stats=describe(values),
    )


def preprocess_categorical(var: BoundVariable) -> CleanCategoricalVariable:
    """Keep every row; missing cells become the reserved extra category."""
    if var.kind != CATEGORICAL:
        raise ConfigError(f"variable {var.name!r} is not categorical")
    labels = tuple(MISSING_LABEL if v is None else v for v in var.values)
    counts = Counter(labels)
    categories = tuple(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))
    return CleanCategoricalVariable(
        name=var.name,
        values=labels,
        kept_ids=var.row_ids,
        categories=categories,
    )
