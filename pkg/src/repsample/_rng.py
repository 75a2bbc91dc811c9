"""Deterministic seed derivation.

Every randomized stage (k-means restarts, sampling iterations, Monte Carlo
repeats) receives its own derived seed so stages are independently
reproducible and may run in any order without changing results.
"""

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> int:
    """One output of the splitmix64 generator for 64-bit `state`."""
    z = (state + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(seed: int, index: int) -> int:
    """Mix (seed, index) into an independent 64-bit child seed."""
    return splitmix64(splitmix64(seed & _MASK64) ^ (index & _MASK64))


def generator(seed: int) -> np.random.Generator:
    """PCG64 generator for a (possibly negative) integer seed."""
    return np.random.default_rng(seed & _MASK64)
