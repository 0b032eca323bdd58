"""Exponentially scaled modified Bessel functions of the first kind.

Below the crossover the power series is summed in the log domain; above it
scipy's ``ive`` (Amos' uniform asymptotic algorithm) is used. The ratio
I_{a-1}/I_a comes from its continued fraction, or from the Hankel asymptotic
series once z is large compared to a^2, and is never formed by dividing two
scaled values.
"""
from __future__ import annotations

import logging
from typing import Union

import numpy as np
from scipy.special import gammaln, ive, logsumexp

from ..errors import DomainError, RangeError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

SERIES_TERMS = 80
ASYMPTOTIC_TERMS = 30
SERIES_CHUNK = 1 << 15


def _crossover() -> float:
    from ..config import get_settings

    return get_settings().bessel_crossover


def _log_series(alpha: float, z: np.ndarray) -> np.ndarray:
    """log I_a(z) from the power series; z > 0, every term positive."""
    flat = z.ravel()
    out = np.empty(flat.shape)
    m = np.arange(SERIES_TERMS, dtype=float)[:, None]
    for start in range(0, flat.size, SERIES_CHUNK):
        block = flat[start : start + SERIES_CHUNK]
        log_terms = (2.0 * m + alpha) * np.log(block / 2.0) - gammaln(m + 1.0) - gammaln(m + alpha + 1.0)
        out[start : start + SERIES_CHUNK] = logsumexp(log_terms, axis=0)
    return out.reshape(z.shape)


def _log_bessel(alpha: float, z: ArrayLike, crossover: float | None, scaled: bool) -> ArrayLike:
    alpha = float(alpha)
    if not alpha > -1.0:
        raise RangeError(f"Bessel order must satisfy alpha > -1, got {alpha}")
    arr = np.asarray(z, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("modified Bessel functions are evaluated at z >= 0 only")
    crossover = _crossover() if crossover is None else crossover
    out = np.empty(arr.shape)
    zero = arr == 0.0
    small = (arr < crossover) & ~zero
    large = arr >= crossover
    if np.any(zero):
        out[zero] = 0.0 if alpha == 0.0 else (-np.inf if alpha > 0.0 else np.inf)
    if np.any(small):
        out[small] = _log_series(alpha, arr[small]) - (arr[small] if scaled else 0.0)
    if np.any(large):
        out[large] = np.log(ive(alpha, arr[large])) + (0.0 if scaled else arr[large])
    return float(out) if out.ndim == 0 else out


def log_bessel_i(alpha: float, z: ArrayLike, crossover: float | None = None) -> ArrayLike:
    """log I_a(z), vectorized over z >= 0."""
    return _log_bessel(alpha, z, crossover, scaled=False)


def log_bessel_i_scaled(alpha: float, z: ArrayLike, crossover: float | None = None) -> ArrayLike:
    """log(e^{-z} I_a(z)), vectorized over z >= 0."""
    return _log_bessel(alpha, z, crossover, scaled=True)


def bessel_i_scaled(alpha: float, z: ArrayLike) -> ArrayLike:
    """e^{-z} I_a(z)."""
    out = np.exp(log_bessel_i_scaled(alpha, z))
    return float(out) if np.ndim(out) == 0 else out


def _lentz_ratio(alpha: float, z: np.ndarray) -> np.ndarray:
    """I_{a-1}/I_a = b0 + 1/(b1 + 1/(b2 + ...)) with b_m = 2(a+m)/z (modified Lentz)."""
    tiny = 1e-300
    f = 2.0 * alpha / z
    c = f.copy()
    d = np.zeros_like(z)
    steps = int(np.ceil(z.max())) + 120
    for m in range(1, steps + 1):
        b = 2.0 * (alpha + m) / z
        d = b + d
        d = np.where(d == 0.0, tiny, d)
        c = b + 1.0 / c
        c = np.where(c == 0.0, tiny, c)
        d = 1.0 / d
        delta = c * d
        f = f * delta
        if np.all(np.abs(delta - 1.0) < 1e-15):
            break
    return f


def _hankel_coefficients(order: float) -> np.ndarray:
    """(-1)^k a_k(order) of I ~ e^z (2 pi z)^{-1/2} sum_k (-1)^k a_k z^{-k}."""
    mu = 4.0 * order * order
    coeffs = np.empty(ASYMPTOTIC_TERMS)
    coeffs[0] = 1.0
    for k in range(1, ASYMPTOTIC_TERMS):
        coeffs[k] = -coeffs[k - 1] * (mu - (2 * k - 1) ** 2) / (8.0 * k)
    return coeffs


def _asymptotic_excess(alpha: float, z: np.ndarray) -> np.ndarray:
    upper = _hankel_coefficients(alpha - 1.0)
    lower = _hankel_coefficients(alpha)
    powers = z[None, :] ** -np.arange(ASYMPTOTIC_TERMS, dtype=float)[:, None]
    diff = np.sum((upper - lower)[:, None] * powers, axis=0)
    base = np.sum(lower[:, None] * powers, axis=0)
    return diff / base


def _asymptotic_threshold(alpha: float) -> float:
    return max(50.0, 4.0 * alpha * alpha)


def bessel_ratio_excess(alpha: float, z: ArrayLike) -> ArrayLike:
    """I_{a-1}(z)/I_a(z) - 1 for a >= 1/2, z > 0."""
    alpha = float(alpha)
    if alpha < 0.5:
        raise RangeError(f"Bessel ratio is implemented for alpha >= 1/2, got {alpha}")
    arr = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(~(arr > 0.0)):
        raise DomainError("Bessel ratio requires z > 0")
    out = np.empty(arr.shape)
    far = arr >= _asymptotic_threshold(alpha)
    if np.any(~far):
        out[~far] = _lentz_ratio(alpha, arr[~far]) - 1.0
    if np.any(far):
        out[far] = _asymptotic_excess(alpha, arr[far])
    return float(out[0]) if np.ndim(z) == 0 else out.reshape(np.shape(z))


def bessel_ratio(alpha: float, z: ArrayLike) -> ArrayLike:
    """I_{a-1}(z)/I_a(z) for a >= 1/2 and z > 0."""
    return 1.0 + bessel_ratio_excess(alpha, z)


__all__ = [
    "bessel_i_scaled",
    "bessel_ratio",
    "bessel_ratio_excess",
    "log_bessel_i",
    "log_bessel_i_scaled",
]
