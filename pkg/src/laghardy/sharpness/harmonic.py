"""Harmonic numbers H(k) = log k + gamma + r(k)."""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Union

import numpy as np

from ..errors import DomainError
from ..numerics import compensated_cumsum, compensated_sum

EULER_GAMMA = 0.57721566490153286061
EXACT_LIMIT = 10**6
SERIES_FROM = 100


def _check(k: int) -> int:
    if int(k) != k or k < 1:
        raise DomainError(f"k must be an integer >= 1, got {k}")
    return int(k)


def _remainder_series(k: np.ndarray) -> np.ndarray:
    """1/(2k) - 1/(12k^2) + 1/(120k^4) - 1/(252k^6) + 1/(240k^8)."""
    inv = 1.0 / k
    inv2 = inv * inv
    return inv * (0.5 - inv * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0))))


@lru_cache(maxsize=1)
def _small_table() -> np.ndarray:
    """H(0), ..., H(SERIES_FROM - 1), correctly rounded."""
    return np.concatenate([[0.0], compensated_cumsum(1.0 / np.arange(1, SERIES_FROM, dtype=float))])


def harmonic_number(k: int) -> float:
    """sum_{j <= k} 1/j, summed exactly up to 10^6 and by the asymptotic series beyond."""
    k = _check(k)
    if k <= EXACT_LIMIT:
        return compensated_sum(1.0 / np.arange(1, k + 1, dtype=float))
    return math.log(k) + EULER_GAMMA + float(_remainder_series(np.float64(k)))


def harmonic_remainder(k: Union[int, np.ndarray]) -> Union[float, np.ndarray]:
    """r(k) = H(k) - log k - gamma, vectorized over integer k >= 1."""
    ks = np.asarray(k)
    if np.any(ks < 1) or np.any(ks != np.floor(ks)):
        raise DomainError("harmonic_remainder needs integers k >= 1")
    kf = ks.astype(float)
    small = ks < SERIES_FROM
    table = _small_table()
    exact = table[np.where(small, ks, 0).astype(np.int64)] - np.log(kf) - EULER_GAMMA
    out = np.where(small, exact, _remainder_series(kf))
    return float(out) if out.ndim == 0 else out


__all__ = ["EULER_GAMMA", "harmonic_number", "harmonic_remainder"]
