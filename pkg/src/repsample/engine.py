"""Stratified draws, estimators, confidence intervals, and iteration.

Within each stratum a simple random sample is taken without replacement
via a seeded partial Fisher-Yates shuffle. The population-mean estimator is

    xbar = sum_k(phi_k * xbar_k)

and its estimated variance, with finite-population correction,

    s2_xbar = sum_k(phi_k^2 * (s2_k / n_k) * (1 - n_k / N_k))

Strata allocated zero draws contribute nothing; their weight is
renormalized out of the estimator and the result is flagged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._rng import derive_seed, generator
from ._validation import check_seed
from .exceptions import ConfigError, Error
from .sizing import SamplingPlan, SizingParams, build_plan
from .strata import NUMERIC, Stratification

DEFAULT_ITERATIONS = 5
_TINY_MEAN = 1e-12


@dataclass(frozen=True)
class MeanEstimate:
    """Point estimate of a population mean with its standard error and CI."""

    mean: float
    se: float
    ci: tuple[float, float]


@dataclass(eq=False)
class SampleResult:
    """One stratified draw: selected ids per stratum plus estimators."""

    selected: dict[int, np.ndarray]  # stratum id -> drawn ids, in draw order
    estimates: dict[str, MeanEstimate]  # per numerical variable
    stratum_shares: dict[int, float]  # n_k / n
    seed: int
    iteration_index: int = 0
    flags: tuple[str, ...] = ()

    def all_selected_ids(self) -> np.ndarray:
        parts = [self.selected[k] for k in sorted(self.selected)]
        parts = [p for p in parts if p.size]
        if not parts:
            return np.array([], dtype=int)
        return np.concatenate(parts)

    @property
    def total(self) -> int:
        return int(sum(v.size for v in self.selected.values()))


@dataclass(eq=False)
class IterationReport:
    """All draws of an iterated run plus the selected one (1-based index)."""

    iterations: list[SampleResult]
    scores: list[float]
    chosen: int

    @property
    def best(self) -> SampleResult:
        return self.iterations[self.chosen - 1]


def _partial_fisher_yates(members: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """First n entries of a Fisher-Yates shuffle of `members`."""
    m = members.size
    pool = members.copy()
    js = rng.integers(low=np.arange(n), high=m)
    for i in range(n):
        j = js[i]
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:n]


def draw_stratified(strat: Stratification, plan: SamplingPlan, seed: int = 0) -> SampleResult:
    """Draw one stratified sample under `plan` and compute estimators."""
    seed = check_seed(seed)
    rng = generator(seed)
    alloc = plan.allocation()

    selected: dict[int, np.ndarray] = {}
    for s in strat.strata:
        n_k = alloc.get(s.id, 0)
        if n_k > s.size:
            raise Error(
                f"plan is corrupt: stratum {s.id} allocates {n_k} of {s.size} members"
            )
        members = np.sort(s.member_ids)
        selected[s.id] = _partial_fisher_yates(members, n_k, rng) if n_k else members[:0]

    sampled = [s for s in strat.strata if alloc.get(s.id, 0) > 0]
    flags: tuple[str, ...] = ()
    if len(sampled) < len(strat.strata):
        flags = ("zero_allocation_strata_renormalized",)
        weight = sum(s.proportion for s in sampled)
    else:
        weight = 1.0  # avoid renormalization noise in the full-coverage case

    estimates: dict[str, MeanEstimate] = {}
    for var in strat.numeric_sources:
        vmap = var.value_map
        xbar = 0.0
        var_xbar = 0.0
        for s in sampled:
            n_k = alloc[s.id]
            vals = vmap.take(selected[s.id])
            w_k = s.proportion / weight
            xbar += w_k * float(vals.mean())
            s2_k = float(np.var(vals, ddof=1)) if n_k > 1 else 0.0
            var_xbar += w_k**2 * (s2_k / n_k) * (1.0 - n_k / s.size)
        se = float(np.sqrt(var_xbar))
        estimates[var.name] = MeanEstimate(
            mean=xbar,
            se=se,
            ci=(xbar - plan.z * se, xbar + plan.z * se),
        )

    n_total = sum(alloc.get(s.id, 0) for s in strat.strata)
    shares = {s.id: (alloc.get(s.id, 0) / n_total if n_total else 0.0) for s in strat.strata}
    return SampleResult(
        selected=selected,
        estimates=estimates,
        stratum_shares=shares,
        seed=seed,
        flags=flags,
    )


def total_variation(shares: dict[int, float], strat: Stratification) -> float:
    """TV distance between sample stratum shares and population proportions."""
    return 0.5 * sum(abs(shares.get(s.id, 0.0) - s.proportion) for s in strat.strata)


def score_result(result: SampleResult, strat: Stratification) -> float:
    """Quality criterion for one draw: lower is better.

    One numerical variable: |xbar - mu|. Several numerical variables: the
    sum of |xbar_v - mu_v| / max(|mu_v|, 1e-12). Purely categorical: TV
    distance between sample and population proportions.
    """
    names = [v.name for v in strat.numeric_sources]
    if not names:
        return total_variation(result.stratum_shares, strat)
    if len(names) == 1:
        mu = strat.population_mean(names[0])
        return abs(result.estimates[names[0]].mean - mu)
    score = 0.0
    for name in names:
        mu = strat.population_mean(name)
        score += abs(result.estimates[name].mean - mu) / max(abs(mu), _TINY_MEAN)
    return score


def select_best(results: list[SampleResult], strat: Stratification) -> tuple[int, list[float]]:
    """Index (1-based) of the minimal-score draw, ties to the earliest."""
    scores = [score_result(r, strat) for r in results]
    chosen = min(range(len(scores)), key=lambda i: (scores[i], i)) + 1
    return chosen, scores


def iterate_and_select(
    strat: Stratification,
    plan: SamplingPlan,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 0,
) -> IterationReport:
    """Repeat the draw with per-iteration derived seeds and keep the best.

    Iteration i uses seed derive_seed(seed, i), so individual iterations
    are reproducible and could run in any order.
    """
    if iterations < 1:
        raise ConfigError(f"iterations must be at least 1, got {iterations}")
    seed = check_seed(seed)
    results = []
    for i in range(1, iterations + 1):
        result = draw_stratified(strat, plan, seed=derive_seed(seed, i))
        result.iteration_index = i
        results.append(result)
    chosen, scores = select_best(results, strat)
    return IterationReport(iterations=results, scores=scores, chosen=chosen)


def sample_categorical(
    strat: Stratification,
    n_or_params: int | SizingParams,
    seed: int = 0,
) -> SampleResult:
    """Proportional draw from a categorical (or composed) stratification.

    The size is either given directly or computed from sizing parameters
    with the worst-case proportion.
    """
    if strat.kind == NUMERIC:
        raise ConfigError(
            "sample_categorical expects a categorical or composed stratification"
        )
    if isinstance(n_or_params, SizingParams):
        plan = build_plan(strat, params=n_or_params)
    else:
        plan = build_plan(strat, sample_size=int(n_or_params))
    return draw_stratified(strat, plan, seed=seed)
