"""Cross-variable strata composition.

The cartesian product of per-variable strata, restricted to combinations
that actually contain observations. The composed universe is the set of
rows kept by every input variable.
"""

from __future__ import annotations

import itertools
import warnings
from functools import reduce
from typing import Sequence

import numpy as np

from .exceptions import ConfigError, DegenerateInputError, Error
from .strata import COMPOSED, Stratification, Stratum, _std_ddof1

MAX_VARIABLES = 6
RECOMMENDED_VARIABLES = 4


def compose(strats: Sequence[Stratification]) -> Stratification:
    """Compose stratifications into one cross-variable stratification.

    Strata are ordered lexicographically by input order then stratum id,
    empty combinations are dropped, and proportions are recomputed over the
    composed universe.
    """
    if len(strats) == 0:
        raise ConfigError("at least one stratification is required")
    if len(strats) > MAX_VARIABLES:
        raise ConfigError(
            f"at most {MAX_VARIABLES} variables can be composed, got {len(strats)}"
        )
    if len(strats) > RECOMMENDED_VARIABLES:
        warnings.warn(
            f"composing more than {RECOMMENDED_VARIABLES} variables makes it "
            "likely that some variables cancel the effect of others",
            stacklevel=2,
        )
    if len(strats) == 1:
        return strats[0]

    covered = [np.sort(np.concatenate([s.member_ids for s in st.strata])) for st in strats]
    universe = reduce(lambda a, b: np.intersect1d(a, b, assume_unique=True), covered)
    if universe.size == 0:
        raise DegenerateInputError("composition is empty: the variables share no rows")

    sources = []
    for st in strats:
        for var in st.numeric_sources:
            if all(v.name != var.name for v in sources):
                sources.append(var)

    strata: list[Stratum] = []
    next_id = 0
    for parts in itertools.product(*(st.strata for st in strats)):
        members = reduce(
            lambda a, b: np.intersect1d(a, b, assume_unique=True),
            (p.member_ids for p in parts),
        )
        if members.size == 0:
            continue
        means = {}
        stds = {}
        for var in sources:
            vals = var.value_map.take(members)
            means[var.name] = float(vals.mean())
            stds[var.name] = _std_ddof1(vals)
        label = ", ".join(
            f"{st.variables[0]}={p.label}" for st, p in zip(strats, parts)
        )
        strata.append(
            Stratum(
                id=next_id,
                label=label,
                member_ids=members,
                size=int(members.size),
                proportion=members.size / universe.size,
                numeric_means=means,
                numeric_stds=stds,
            )
        )
        next_id += 1

    if sum(s.size for s in strata) != universe.size:
        raise Error(
            "composed strata do not partition the shared universe; "
            "were the stratifications built over the same dataset?"
        )
    return Stratification(
        variables=tuple(name for st in strats for name in st.variables),
        strata=tuple(strata),
        population_size=int(universe.size),
        kind=COMPOSED,
        numeric_sources=tuple(sources),
    )
