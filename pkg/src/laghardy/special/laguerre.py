"""Laguerre polynomials, standard Laguerre functions and Laguerre functions of Hermite type.

The standard functions are

    L_k^a(u) * sqrt(k!/Gamma(k+a+1)) * u^(a/2) * exp(-u/2),

and the Hermite-type functions are phi_k^a(x) = sqrt(2x) * L_k^a(x^2) in the
notation above. Both are produced by a single recurrence on the orthonormal
polynomials; the weight is carried as a logarithm and only applied at the end,
so no intermediate overflows even when the polynomial itself would.
"""
from __future__ import annotations

import logging
import math
from typing import Union

import numpy as np
from scipy.special import gammaln

from ..errors import DomainError, RangeError
from ..types import AlphaIndex, EvalPoint, MultiIndex, check_dims, is_hermite_class

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

_BIG = 1e200
_RESCALE = 2.0**-600
_LOG_RESCALE = 600.0 * math.log(2.0)


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha > -1.0:
        raise RangeError(f"alpha must satisfy alpha > -1, got {alpha}")
    return alpha


def _check_order(k: int, name: str = "k") -> int:
    if int(k) != k or k < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {k}")
    return int(k)


def log_gamma(x: ArrayLike) -> ArrayLike:
    """ln Gamma(x) for x > 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0.0)):
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    out = gammaln(arr)
    return float(out) if out.ndim == 0 else out


def laguerre_poly_seq(alpha: float, u: float, kmax: int) -> np.ndarray:
    """L_0^a(u), ..., L_kmax^a(u) from the three-term recurrence."""
    alpha = _check_alpha(alpha)
    kmax = _check_order(kmax, "kmax")
    u = float(u)
    if u < 0.0:
        raise DomainError(f"u must be >= 0, got {u}")
    out = np.empty(kmax + 1)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = 1.0 + alpha - u
    prev, cur = 1.0, 1.0 + alpha - u
    for k in range(1, kmax):
        prev, cur = cur, ((2 * k + 1 + alpha - u) * cur - (k + alpha) * prev) / (k + 1)
        if not math.isfinite(cur):
            raise RangeError(f"L_{k + 1}^{alpha}({u}) exceeds the double-precision range")
        out[k + 1] = cur
    return out


def boundary_value(alpha: float, k: int, kind: str = "hermite") -> float:
    """Limit at u -> 0+ of the standard (kind="standard") or Hermite-type function.

    The power u^(a/2) (standard) or x^(a+1/2) (Hermite type) decides: a
    positive exponent gives 0, a zero exponent a finite nonzero limit, and a
    negative exponent an unbounded function.
    """
    alpha = _check_alpha(alpha)
    k = _check_order(k)
    if kind == "standard":
        exponent = alpha / 2.0
    elif kind == "hermite":
        exponent = alpha + 0.5
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if exponent > 0.0:
        return 0.0
    if exponent < 0.0:
        raise RangeError(f"{kind} Laguerre function of order alpha={alpha} is unbounded at 0")
    value = math.exp(0.5 * (gammaln(k + alpha + 1.0) - gammaln(k + 1.0)) - gammaln(alpha + 1.0))
    return math.sqrt(2.0) * value if kind == "hermite" else value


def _normalized_sweep(alpha: float, u: np.ndarray, kmax: int, log_weight: np.ndarray) -> np.ndarray:
    """Orthonormal recurrence for all orders at once; u must be strictly positive."""
    out = np.empty((kmax + 1,) + u.shape)
    prev = np.zeros(u.shape)
    cur = np.ones(u.shape)
    shift = np.zeros(u.shape)
    out[0] = np.exp(log_weight)
    for k in range(kmax):
        denom = math.sqrt((k + 1.0) * (k + 1.0 + alpha))
        a = (2.0 * k + 1.0 + alpha - u) / denom
        b = math.sqrt(k * (k + alpha)) / denom
        prev, cur = cur, a * cur - b * prev
        big = np.abs(cur) > _BIG
        if np.any(big):
            cur = np.where(big, cur * _RESCALE, cur)
            prev = np.where(big, prev * _RESCALE, prev)
            shift = shift + big
        mag = np.abs(cur)
        with np.errstate(divide="ignore"):
            logs = np.log(mag) + shift * _LOG_RESCALE + log_weight
        out[k + 1] = np.where(mag > 0.0, np.sign(cur) * np.exp(logs), 0.0)
    return out


def _fill_boundary(out: np.ndarray, zero: np.ndarray, alpha: float, kind: str) -> None:
    if not np.any(zero):
        return
    for k in range(out.shape[0]):
        out[k][zero] = boundary_value(alpha, k, kind)


def standard_laguerre_sweep(alpha: float, u: ArrayLike, kmax: int) -> np.ndarray:
    """Array of shape (kmax+1, *u.shape) holding the standard functions of every order."""
    alpha = _check_alpha(alpha)
    kmax = _check_order(kmax, "kmax")
    u = np.asarray(u, dtype=float)
    if np.any(u < 0.0):
        raise DomainError("standard Laguerre functions are defined for u >= 0")
    zero = u == 0.0
    safe = np.where(zero, 1.0, u)
    log_weight = 0.5 * alpha * np.log(safe) - 0.5 * safe - 0.5 * gammaln(alpha + 1.0)
    out = _normalized_sweep(alpha, safe, kmax, log_weight)
    _fill_boundary(out, zero, alpha, "standard")
    return out


def hermite_laguerre_sweep(alpha: float, x: ArrayLike, kmax: int) -> np.ndarray:
    """Array of shape (kmax+1, *x.shape) holding phi_0^a(x), ..., phi_kmax^a(x)."""
    alpha = _check_alpha(alpha)
    kmax = _check_order(kmax, "kmax")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise DomainError("Hermite-type Laguerre functions are defined for x >= 0")
    zero = x == 0.0
    safe = np.where(zero, 1.0, x)
    log_x = np.log(safe)
    log_weight = (alpha + 0.5) * log_x - 0.5 * safe * safe - 0.5 * gammaln(alpha + 1.0) + 0.5 * math.log(2.0)
    out = _normalized_sweep(alpha, safe * safe, kmax, log_weight)
    _fill_boundary(out, zero, alpha, "hermite")
    return out


def hermite_laguerre_dx_sweep(alpha: float, x: ArrayLike, kmax: int) -> np.ndarray:
    """Derivatives of phi_0^a .. phi_kmax^a at x > 0."""
    alpha = _check_alpha(alpha)
    if not is_hermite_class(alpha):
        raise RangeError(f"derivative formula is gated to alpha in {{-1/2}} U [1/2, inf), got {alpha}")
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0.0)):
        raise DomainError("derivatives are evaluated at x > 0 only")
    phi = hermite_laguerre_sweep(alpha, x, kmax)
    factor = (2.0 * alpha + 1.0) / (2.0 * x) - x
    out = factor * phi
    if kmax >= 1:
        shifted = hermite_laguerre_sweep(alpha + 1.0, x, kmax - 1)
        roots = np.sqrt(np.arange(1, kmax + 1, dtype=float)).reshape((-1,) + (1,) * x.ndim)
        out[1:] -= 2.0 * roots * shifted
    return out


def _single(sweep, alpha: float, k: int, u: ArrayLike) -> ArrayLike:
    k = _check_order(k)
    arr = np.asarray(u, dtype=float)
    value = sweep(alpha, arr, k)[k]
    return float(value) if arr.ndim == 0 else value


def standard_laguerre_fn(alpha: float, k: int, u: ArrayLike) -> ArrayLike:
    return _single(standard_laguerre_sweep, alpha, k, u)


def hermite_laguerre_fn(alpha: float, k: int, x: ArrayLike) -> ArrayLike:
    """phi_k^a(x); at x = 0 the boundary limit is returned."""
    return _single(hermite_laguerre_sweep, alpha, k, x)


def hermite_laguerre_dx(alpha: float, k: int, x: ArrayLike) -> ArrayLike:
    """(phi_k^a)'(x) = -2 sqrt(k) phi_{k-1}^{a+1}(x) + ((2a+1)/(2x) - x) phi_k^a(x)."""
    return _single(hermite_laguerre_dx_sweep, alpha, k, x)


def hermite_laguerre_fn_multi(alpha: AlphaIndex, n: MultiIndex, x: EvalPoint) -> float:
    """Tensor product of one-dimensional functions."""
    alpha, n, x = AlphaIndex.of(alpha), MultiIndex.of(n), EvalPoint.of(x)
    check_dims(alpha, n, x)
    value = 1.0
    for a_i, n_i, x_i in zip(alpha, n, x):
        value *= hermite_laguerre_fn(a_i, n_i, x_i)
        if value == 0.0:
            break
    return value


def nu(alpha: float, k: ArrayLike) -> ArrayLike:
    """Transition scale max(4k + 2a + 2, 2)."""
    return np.maximum(4.0 * np.asarray(k, dtype=float) + 2.0 * alpha + 2.0, 2.0)


__all__ = [
    "boundary_value",
    "hermite_laguerre_dx",
    "hermite_laguerre_dx_sweep",
    "hermite_laguerre_fn",
    "hermite_laguerre_fn_multi",
    "hermite_laguerre_sweep",
    "laguerre_poly_seq",
    "log_gamma",
    "nu",
    "standard_laguerre_fn",
    "standard_laguerre_sweep",
]
