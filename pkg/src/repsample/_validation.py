"""Input validation helpers used by the estimators and module functions."""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import ConfigError


def check_values_1d(values, name: str = "values") -> np.ndarray:
    """Coerce `values` to a 1-D float64 array of finite numbers."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr.ravel()
    if arr.ndim != 1:
        raise ConfigError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ConfigError(f"{name} must not be empty")
    if not np.isfinite(arr).all():
        raise ConfigError(f"{name} must contain only finite numbers")
    return arr


def check_confidence(confidence) -> float:
    if not isinstance(confidence, numbers.Real) or not 0.0 < float(confidence) < 1.0:
        raise ConfigError(f"confidence must lie strictly in (0, 1), got {confidence!r}")
    return float(confidence)


def check_positive(value, name: str) -> float:
    if not isinstance(value, numbers.Real) or not float(value) > 0.0:
        raise ConfigError(f"{name} must be a positive number, got {value!r}")
    return float(value)


def check_seed(seed) -> int:
    if seed is None:
        return 0
    if not isinstance(seed, numbers.Integral):
        raise ConfigError(f"seed must be an integer, got {seed!r}")
    return int(seed)
