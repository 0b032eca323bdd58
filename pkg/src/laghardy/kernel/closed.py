"""The smoothing kernel R_r^a(x, y) = sum_k r^k phi_k^a(x) phi_k^a(y).

Closed form:

    R = 2 sqrt(xy) / ((1-r) r^(a/2)) * exp(-(1+r)(x^2+y^2) / (2(1-r))) * I_a(2 sqrt(r) xy / (1-r)).

With z = 2 sqrt(r) xy / (1-r) the Gaussian and the e^z growth of I_a are
combined before exponentiation:

    -(1+r)(x^2+y^2) / (2(1-r)) + z = -(1+r)(x-y)^2 / (2(1-r)) - xy (1-r) / (1+sqrt r)^2,

which is never positive, and I_a enters through log(e^{-z} I_a(z)).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional, Union

import numpy as np
from scipy.special import gammaln

from ..errors import BudgetError, DomainError, RangeError
from ..numerics import compensated_cumsum
from ..special.bessel import bessel_ratio_excess, log_bessel_i_scaled
from ..special.envelope import phi_sup_bound
from ..special.laguerre import hermite_laguerre_sweep
from ..types import AlphaIndex, EvalPoint, check_dims, is_hermite_class

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

SMALL_ARGUMENT_Z = 1e-2
SMALL_ARGUMENT_TERMS = 8
_LOG2 = math.log(2.0)
_HALF_SQRT_PI_INV = 1.0 / math.sqrt(math.pi)


class Branch(str, Enum):
    CLOSED_BESSEL = "closed_bessel"
    SPECTRAL_SERIES = "spectral_series"
    SMALL_ARGUMENT = "small_argument_series"


@dataclass(frozen=True)
class SmoothingParam:
    """r in (0, 1) together with its exact gap 1 - r.

    Near r = 1 the stored r may round to 1.0; every quantity that depends on
    1 - r is computed from ``gap``.
    """

    r: float
    gap: float

    def __post_init__(self) -> None:
        if not (0.0 < self.r <= 1.0 and 0.0 < self.gap < 1.0):
            raise RangeError(f"smoothing parameter must satisfy 0 < r < 1, got r={self.r}, 1-r={self.gap}")
        if abs(self.r + self.gap - 1.0) > 1e-15:
            raise RangeError(f"r={self.r} and gap={self.gap} do not add up to 1")

    @classmethod
    def of(cls, r: Union[float, "SmoothingParam"]) -> "SmoothingParam":
        if isinstance(r, SmoothingParam):
            return r
        r = float(r)
        return cls(r=r, gap=1.0 - r)

    @classmethod
    def from_gap(cls, gap: float) -> "SmoothingParam":
        gap = float(gap)
        return cls(r=1.0 - gap, gap=gap)

    @cached_property
    def sqrt_r(self) -> float:
        return math.sqrt(self.r)

    @cached_property
    def q(self) -> float:
        """(1 + r) / (1 - r)."""
        return (1.0 + self.r) / self.gap

    @cached_property
    def z_scale(self) -> float:
        """2 sqrt(r) / (1 - r)."""
        return 2.0 * self.sqrt_r / self.gap

    @cached_property
    def cancel(self) -> float:
        """(1 - r) / (1 + sqrt r)^2, the residual decay of the combined exponent."""
        return self.gap / (1.0 + self.sqrt_r) ** 2

    @cached_property
    def width(self) -> float:
        """Standard deviation of the Gaussian factor in y - x: sqrt((1-r)/(1+r))."""
        return math.sqrt(self.gap / (1.0 + self.r))

    def peak(self, x: float) -> float:
        """Maximizer in y of the Gaussian part of R_r(x, .)."""
        return 2.0 * self.sqrt_r * x / (1.0 + self.r)

    def squared(self) -> "SmoothingParam":
        """r^2, with 1 - r^2 = (1-r)(1+r) kept exact."""
        return SmoothingParam(r=self.r * self.r, gap=self.gap * (1.0 + self.r))

    def compose(self, other: "SmoothingParam") -> "SmoothingParam":
        """rs, with 1 - rs = (1-r) + (1-s) - (1-r)(1-s)."""
        return SmoothingParam(r=self.r * other.r, gap=self.gap + other.gap - self.gap * other.gap)


@dataclass(frozen=True)
class KernelQuery:
    alpha: AlphaIndex
    r: SmoothingParam
    x: float
    y: float
    branch: Branch

    @classmethod
    def build(cls, alpha: float, r: SmoothingParam, x: float, y: float, branch: Optional[Branch] = None) -> "KernelQuery":
        return cls(
            alpha=AlphaIndex.of(alpha, d=1),
            r=r,
            x=float(x),
            y=float(y),
            branch=branch if branch is not None else select_branch(r, x, y),
        )

    def evaluate(self) -> float:
        if self.branch is Branch.SPECTRAL_SERIES:
            return kernel_series(self.alpha[0], self.r, self.x, self.y)
        return kernel_closed(self.alpha[0], self.r, self.x, self.y)


def select_branch(r: SmoothingParam, x: float, y: float) -> Branch:
    """Small-argument series when z < 1e-2, closed form otherwise."""
    return Branch.SMALL_ARGUMENT if r.z_scale * x * y < SMALL_ARGUMENT_Z else Branch.CLOSED_BESSEL


def _check_points(x: ArrayLike, y: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(~(x > 0.0)) or np.any(~(y > 0.0)):
        raise DomainError("the kernel is evaluated at x, y > 0")
    return x, y


def _log_small_argument(alpha: float, r: SmoothingParam, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """log R from the power series of I_a, with r^(a/2) cancelled analytically."""
    xy = x * y
    half_z = 0.5 * r.z_scale * xy
    m = np.arange(1, SMALL_ARGUMENT_TERMS, dtype=float).reshape((-1,) + (1,) * xy.ndim)
    with np.errstate(divide="ignore"):
        log_terms = 2.0 * m * np.log(half_z) - gammaln(m + 1.0) - gammaln(m + alpha + 1.0) + gammaln(alpha + 1.0)
    tail = np.sum(np.exp(log_terms), axis=0)
    return (
        _LOG2
        + 0.5 * np.log(xy)
        - math.log(r.gap)
        + alpha * np.log(xy / r.gap)
        - gammaln(alpha + 1.0)
        + np.log1p(tail)
        - 0.5 * r.q * (x * x + y * y)
    )


def log_kernel(alpha: float, r: SmoothingParam | float, x: ArrayLike, y: ArrayLike) -> ArrayLike:
    """log R_r^a(x, y), vectorized with broadcasting."""
    alpha = float(alpha)
    if not alpha > -1.0:
        raise RangeError(f"kernel requires alpha > -1, got {alpha}")
    r = SmoothingParam.of(r)
    x, y = _check_points(x, y)
    xy = x * y
    z = r.z_scale * xy
    small = z < SMALL_ARGUMENT_Z
    out = np.empty(x.shape)
    if np.any(~small):
        xs, ys, zs = x[~small], y[~small], z[~small]
        expo = -0.5 * r.q * (xs - ys) ** 2 - xs * ys * r.cancel
        out[~small] = (
            _LOG2
            + 0.5 * np.log(xs * ys)
            - math.log(r.gap)
            - 0.5 * alpha * math.log(r.r)
            + expo
            + log_bessel_i_scaled(alpha, zs)
        )
    if np.any(small):
        out[small] = _log_small_argument(alpha, r, x[small], y[small])
    return float(out) if out.ndim == 0 else out


def kernel_closed(alpha: float, r: SmoothingParam | float, x: ArrayLike, y: ArrayLike) -> ArrayLike:
    """R_r^a(x, y) from the closed form; may underflow to 0 far from the diagonal."""
    out = np.exp(log_kernel(alpha, r, x, y))
    return float(out) if np.ndim(out) == 0 else out


def series_terms(alpha: float, r: SmoothingParam, tol: float) -> int:
    """Smallest N with C^2 r^(N+1) / (1-r) < tol, C a uniform bound on |phi_k|."""
    C = phi_sup_bound(alpha)
    bound = tol * r.gap / (C * C)
    if bound >= 1.0:
        return 0
    return max(0, int(math.ceil(math.log(bound) / math.log(r.r))) - 1)


def kernel_series(
    alpha: float,
    r: SmoothingParam | float,
    x: ArrayLike,
    y: ArrayLike,
    tol: Optional[float] = None,
) -> ArrayLike:
    """Truncated spectral sum sum_{k<=N} r^k phi_k(x) phi_k(y)."""
    from ..config import get_settings

    settings = get_settings()
    alpha = float(alpha)
    if alpha < -0.5:
        raise RangeError(f"spectral series needs bounded phi_k, i.e. alpha >= -1/2, got {alpha}")
    r = SmoothingParam.of(r)
    if r.r > settings.r_series_max:
        raise RangeError(f"spectral series is limited to r <= {settings.r_series_max}, got r={r.r}")
    tol = settings.tol_1d if tol is None else tol
    N = series_terms(alpha, r, tol)
    if N > settings.series_term_cap:
        raise BudgetError(f"spectral series needs N={N} terms, cap is {settings.series_term_cap}")
    x, y = _check_points(x, y)
    powers = np.exp(np.arange(N + 1) * math.log(r.r)).reshape((-1,) + (1,) * x.ndim)
    terms = powers * hermite_laguerre_sweep(alpha, x, N) * hermite_laguerre_sweep(alpha, y, N)
    logger.debug("Spectral kernel series: alpha=%s r=%s N=%d", alpha, r.r, N)
    out = compensated_cumsum(terms, axis=0)[-1]
    return float(out) if out.ndim == 0 else out


def _dx_bracket_half(alpha: float, r: SmoothingParam, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """d/dx log R for alpha >= 1/2, from I_a' = I_{a-1} - (a/z) I_a."""
    z = r.z_scale * x * y
    c = r.z_scale * y
    return c * bessel_ratio_excess(alpha, z) + (2.0 * r.sqrt_r * y - (1.0 + r.r) * x) / r.gap - (2.0 * alpha - 1.0) / (2.0 * x)


def kernel_dx(alpha: float, r: SmoothingParam | float, x: ArrayLike, y: ArrayLike) -> ArrayLike:
    """Partial derivative of R_r^a(x, y) in x, for alpha in {-1/2} U [1/2, inf)."""
    alpha = float(alpha)
    if not is_hermite_class(alpha):
        raise RangeError(f"kernel derivative is available for alpha in {{-1/2}} U [1/2, inf), got {alpha}")
    r = SmoothingParam.of(r)
    x, y = _check_points(x, y)
    if alpha == -0.5:
        z = r.z_scale * x * y
        expo = -0.5 * r.q * (x - y) ** 2 - x * y * r.cancel
        decay = np.exp(-2.0 * z)
        bracket = 2.0 * r.sqrt_r * y * (-np.expm1(-2.0 * z)) - (1.0 + r.r) * x * (1.0 + decay)
        out = 2.0 * _HALF_SQRT_PI_INV * r.gap**-1.5 * 0.5 * np.exp(expo) * bracket
    else:
        out = np.exp(log_kernel(alpha, r, x, y)) * _dx_bracket_half(alpha, r, x, y)
    return float(out) if np.ndim(out) == 0 else out


def kernel_multi(alpha: AlphaIndex, r: SmoothingParam | float, x: EvalPoint, y: EvalPoint) -> float:
    """Product of one-dimensional kernels."""
    alpha, x, y = AlphaIndex.of(alpha), EvalPoint.of(x), EvalPoint.of(y)
    check_dims(alpha, x, y)
    r = SmoothingParam.of(r)
    return math.exp(math.fsum(log_kernel(a, r, xi, yi) for a, xi, yi in zip(alpha, x, y)))


def kernel_dxj_multi(alpha: AlphaIndex, j: int, r: SmoothingParam | float, x: EvalPoint, y: EvalPoint) -> float:
    """Derivative in the j-th coordinate (1-based) of the product kernel."""
    alpha, x, y = AlphaIndex.of(alpha), EvalPoint.of(x), EvalPoint.of(y)
    d = check_dims(alpha, x, y)
    if int(j) != j or not 1 <= j <= d:
        raise DomainError(f"coordinate index j must lie in 1..{d}, got {j}")
    r = SmoothingParam.of(r)
    i = int(j) - 1
    rest = math.fsum(log_kernel(a, r, xi, yi) for k, (a, xi, yi) in enumerate(zip(alpha, x, y)) if k != i)
    return kernel_dx(alpha[i], r, x[i], y[i]) * math.exp(rest)


__all__ = [
    "Branch",
    "KernelQuery",
    "SmoothingParam",
    "kernel_closed",
    "kernel_dx",
    "kernel_dxj_multi",
    "kernel_multi",
    "kernel_series",
    "log_kernel",
    "select_branch",
    "series_terms",
]
