"""Sample-size determination and proportional allocation.

For a stratified numerical variable the total size solves

    n = sum_i(phi_i * s_i^2) / ((eps/z)^2 + (1/N) * sum_i(phi_i * s_i^2))

with phi_i = N_i/N and s_i the per-stratum standard deviation (divisor
N_i - 1). For categorical variables the proportion-scale formula is

    n = p(1-p) / (eps/z)^2,   worst case p = 1/2:  n = (z / (2*eps))^2

Totals are rounded up once and then split across strata by
largest-remainder apportionment, which preserves the total exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from ._validation import check_confidence, check_positive
from .exceptions import ConfigError, DegenerateInputError, DegenerateInputWarning
from .strata import NUMERIC, Stratification

ABSOLUTE = "absolute"
RELATIVE_TO_MEAN = "relative_to_mean"

WORST_CASE = "worst_case"


@dataclass(frozen=True)
class SizingParams:
    """Margin of error, confidence level, and allocation method."""

    epsilon: float
    confidence: float = 0.95
    epsilon_mode: str = RELATIVE_TO_MEAN
    allocation: str = "proportional"

    def __post_init__(self):
        check_positive(self.epsilon, "epsilon")
        check_confidence(self.confidence)
        if self.epsilon_mode not in (ABSOLUTE, RELATIVE_TO_MEAN):
            raise ConfigError(
                f"epsilon_mode must be {ABSOLUTE!r} or {RELATIVE_TO_MEAN!r}, "
                f"got {self.epsilon_mode!r}"
            )
        if self.allocation != "proportional":
            raise ConfigError(
                f"only proportional allocation is implemented, got {self.allocation!r}"
            )


@dataclass(frozen=True)
class SamplingPlan:
    """Total sample size with its per-stratum allocation."""

    n: int
    per_stratum: tuple[tuple[int, int], ...]  # (stratum id, n_i)
    params: SizingParams | None
    z: float
    epsilon_resolved: float | None = None
    flags: tuple[str, ...] = ()

    def allocation(self) -> dict[int, int]:
        return dict(self.per_stratum)


# Acklam's rational approximation of the inverse standard-normal CDF,
# polished with one Halley step so the result is accurate to ~1e-15.
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)
_P_LOW = 0.02425


def _inverse_normal_cdf(p: float) -> float:
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        x = ((((( _C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
            (((( _D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0)
    elif p <= 1.0 - _P_LOW:
        q = p - 0.5
        r = q * q
        x = ((((( _A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / \
            ((((( _B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0)
    else:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        x = -((((( _C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
            (((( _D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0)
    # Halley refinement against the exact CDF
    e = 0.5 * math.erfc(-x / math.sqrt(2.0)) - p
    u = e * math.sqrt(2.0 * math.pi) * math.exp(x * x / 2.0)
    return x - u / (1.0 + x * u / 2.0)


def z_quantile(confidence: float) -> float:
    """Two-sided critical value z such that P(|Z| <= z) = confidence."""
    confidence = check_confidence(confidence)
    return _inverse_normal_cdf((1.0 + confidence) / 2.0)


def allocate_proportional(n: int, strat: Stratification) -> tuple[tuple[int, int], ...]:
    """Split n across strata proportionally by largest remainder.

    Quotas n*N_i/N are floored; leftover units go to the largest fractional
    remainders (ties prefer larger strata, then lower id). Every allocation
    is capped at the stratum size; an over-full stratum passes its unit to
    the next candidate with capacity. The returned sizes always sum to n.
    """
    n = int(n)
    N = strat.population_size
    if n < 0:
        raise ConfigError(f"sample size must be non-negative, got {n}")
    if n > N:
        raise ConfigError(f"sample size {n} exceeds population size {N}")

    # quotas are rational with denominator N, so floors/remainders are exact
    alloc = {}
    remainders = {}
    for s in strat.strata:
        alloc[s.id] = (n * s.size) // N
        remainders[s.id] = (n * s.size) % N
    deficit = n - sum(alloc.values())
    order = sorted(strat.strata, key=lambda s: (-remainders[s.id], -s.size, s.id))
    i = 0
    while deficit > 0:
        s = order[i % len(order)]
        if alloc[s.id] < s.size:
            alloc[s.id] += 1
            deficit -= 1
        i += 1
    return tuple((s.id, alloc[s.id]) for s in strat.strata)


def required_n_numeric(strat: Stratification, params: SizingParams) -> SamplingPlan:
    """Sample size for a stratified numerical variable, then allocation.

    A relative margin of error resolves against the population mean
    (epsilon_abs = |mu| * epsilon); the computed total is rounded up and
    clamped to the population size.
    """
    if strat.kind != NUMERIC:
        raise ConfigError(
            "numeric sizing requires a single-variable numerical stratification"
        )
    z = z_quantile(params.confidence)
    mu = sum(s.proportion * s.mean for s in strat.strata)
    if params.epsilon_mode == RELATIVE_TO_MEAN:
        if mu == 0.0:
            raise DegenerateInputError(
                "relative margin of error is undefined for a zero population mean"
            )
        eps_abs = abs(mu) * params.epsilon
    else:
        eps_abs = params.epsilon

    pooled = sum(s.proportion * s.std**2 for s in strat.strata)
    if pooled == 0.0:
        warnings.warn(
            "all stratum variances are zero; sampling one observation per stratum",
            DegenerateInputWarning,
            stacklevel=2,
        )
        per = tuple((s.id, 1) for s in strat.strata)
        return SamplingPlan(
            n=len(per),
            per_stratum=per,
            params=params,
            z=z,
            epsilon_resolved=eps_abs,
            flags=("degenerate_zero_variance",),
        )

    n_real = pooled / ((eps_abs / z) ** 2 + pooled / strat.population_size)
    n = min(max(1, math.ceil(n_real)), strat.population_size)
    return SamplingPlan(
        n=n,
        per_stratum=allocate_proportional(n, strat),
        params=params,
        z=z,
        epsilon_resolved=eps_abs,
    )


def required_n_categorical(params: SizingParams, p_hat=WORST_CASE) -> int:
    """Sample size on the proportion scale.

    `p_hat` is either an expected category proportion in (0, 1) or
    ``"worst_case"`` for p = 1/2, which maximizes the required size. The
    margin of error is always absolute here.
    """
    if not 0.0 < params.epsilon < 1.0:
        raise ConfigError(
            f"categorical margin of error must lie in (0, 1), got {params.epsilon}"
        )
    z = z_quantile(params.confidence)
    if p_hat == WORST_CASE:
        return math.ceil((z / (2.0 * params.epsilon)) ** 2)
    p = float(p_hat)
    if not 0.0 < p < 1.0:
        raise ConfigError(f"p_hat must lie strictly in (0, 1), got {p_hat!r}")
    return math.ceil(p * (1.0 - p) * (z / params.epsilon) ** 2)


def build_plan(
    strat: Stratification,
    params: SizingParams | None = None,
    sample_size: int | None = None,
    confidence: float = 0.95,
) -> SamplingPlan:
    """Resolve a SamplingPlan for any stratification kind.

    Numerical stratifications size via `required_n_numeric`; categorical and
    composed ones via the worst-case proportion formula. An explicit
    `sample_size` bypasses sizing entirely.
    """
    if sample_size is not None:
        z = z_quantile(params.confidence if params is not None else confidence)
        n = int(sample_size)
        if n > strat.population_size:
            raise ConfigError(
                f"sample size {n} exceeds population size {strat.population_size}"
            )
        return SamplingPlan(
            n=n,
            per_stratum=allocate_proportional(n, strat),
            params=params,
            z=z,
        )
    if params is None:
        raise ConfigError("either sizing parameters or an explicit sample size is required")
    if strat.kind == NUMERIC:
        return required_n_numeric(strat, params)
    n = required_n_categorical(params)
    flags = ()
    if n > strat.population_size:
        n = strat.population_size
        flags = ("clamped_to_population",)
    return SamplingPlan(
        n=n,
        per_stratum=allocate_proportional(n, strat),
        params=params,
        z=z_quantile(params.confidence),
        epsilon_resolved=params.epsilon,
        flags=flags,
    )
