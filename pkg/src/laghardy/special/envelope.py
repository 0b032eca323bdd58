"""Pointwise envelopes and sup-norm scans for phi_k^a."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from ..errors import DomainError, RangeError
from ..types import is_hermite_class
from .laguerre import hermite_laguerre_dx_sweep, hermite_laguerre_sweep, nu

logger = logging.getLogger(__name__)

REGIMES: Tuple[str, ...] = ("small", "flat", "turning", "tail")


@dataclass(frozen=True)
class Envelope:
    regime: str
    bound: float
    nu: float
    gamma: float


def _default_gamma() -> float:
    from ..config import get_settings

    return get_settings().tail_gamma


def regime_bounds(alpha: float, k: int, u: np.ndarray, gamma: float) -> Tuple[np.ndarray, np.ndarray]:
    """Regime codes (indices into REGIMES) and unit-constant bounds at each u > 0."""
    v = float(nu(alpha, k))
    u = np.asarray(u, dtype=float)
    small = u <= 1.0 / math.sqrt(v)
    flat = ~small & (u <= math.sqrt(v / 2.0))
    turning = ~small & ~flat & (u <= math.sqrt(1.5 * v))
    codes = np.select([small, flat, turning], [0, 1, 2], default=3)
    bound = np.select(
        [small, flat, turning, codes == 3],
        [
            u ** (alpha + 0.5) * v ** (alpha / 2.0),
            np.full(u.shape, v**-0.25),
            np.sqrt(u) * (v * (v ** (1.0 / 3.0) + np.abs(u * u - v))) ** -0.25,
            np.sqrt(u) * np.exp(-gamma * u * u),
        ],
    )
    return codes, bound


def envelope(alpha: float, k: int, u: float, C: float = 1.0, gamma: Optional[float] = None) -> Envelope:
    """Regime of u for order k and C times the matching bound."""
    if alpha < -0.5:
        raise RangeError(f"envelope estimates need alpha >= -1/2, got {alpha}")
    if not u > 0.0:
        raise DomainError(f"envelope is evaluated at u > 0, got {u}")
    gamma = _default_gamma() if gamma is None else gamma
    codes, bound = regime_bounds(alpha, k, np.asarray([u]), gamma)
    return Envelope(regime=REGIMES[int(codes[0])], bound=float(C * bound[0]), nu=float(nu(alpha, k)), gamma=gamma)


def _ratios(alpha: float, kmax: int, grid: np.ndarray, gamma: float) -> Tuple[np.ndarray, np.ndarray]:
    phi = np.abs(hermite_laguerre_sweep(alpha, grid, kmax))
    ratios = np.empty_like(phi)
    codes = np.empty(phi.shape, dtype=int)
    for k in range(kmax + 1):
        codes[k], bound = regime_bounds(alpha, k, grid, gamma)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios[k] = np.where(phi[k] > 0.0, phi[k] / bound, 0.0)
    return ratios, codes


def fit_envelope_constant(alpha: float, kmax: int, grid: np.ndarray, gamma: Optional[float] = None) -> float:
    """Smallest C (up to rounding) with C * bound >= |phi_k| on the grid for k <= kmax."""
    gamma = _default_gamma() if gamma is None else gamma
    ratios, _ = _ratios(alpha, kmax, np.asarray(grid, dtype=float), gamma)
    C = float(np.max(ratios)) * (1.0 + 1e-12)
    if not math.isfinite(C):
        raise RangeError(f"envelope constant overflows for alpha={alpha}, gamma={gamma}")
    logger.info("Fitted envelope constant C=%.4g (alpha=%s, kmax=%d, gamma=%.4g)", C, alpha, kmax, gamma)
    return C


def calibrate_tail_gamma(alpha: float, kmax: int, grid: np.ndarray) -> float:
    """Largest gamma in (0, 1/2] keeping the tail bound under the non-tail constant.

    C0 is fitted on the small, flat and turning regimes; gamma is then the
    minimum of (log(C0 sqrt(u)) - log|phi_k(u)|) / u^2 over tail points that do
    not underflow.
    """
    grid = np.asarray(grid, dtype=float)
    phi = np.abs(hermite_laguerre_sweep(alpha, grid, kmax))
    c0 = 0.0
    candidates = []
    for k in range(kmax + 1):
        codes, bound = regime_bounds(alpha, k, grid, 0.5)
        inner = codes < 3
        if np.any(inner):
            c0 = max(c0, float(np.max(phi[k][inner] / bound[inner])))
        tail = (codes == 3) & (phi[k] > 0.0)
        if np.any(tail):
            candidates.append((np.log(grid[tail]) * 0.5 - np.log(phi[k][tail]), grid[tail]))
    if not candidates or c0 == 0.0:
        logger.warning("No tail points to calibrate gamma for alpha=%s; using the default", alpha)
        return _default_gamma()
    gamma = min(float(np.min((math.log(c0) + num) / (u * u))) for num, u in candidates)
    gamma = min(max(gamma, 1e-6), 0.5)
    logger.info("Calibrated tail gamma=%.4g for alpha=%s (C0=%.4g)", gamma, alpha, c0)
    return gamma


@dataclass(frozen=True)
class SupScan:
    alpha: float
    orders: np.ndarray
    phi_sup: np.ndarray
    dphi_sup: Optional[np.ndarray]
    grid_size: int


def default_sup_grid(alpha: float, kmax: int, spacing: float = 0.005) -> np.ndarray:
    upper = 1.3 * math.sqrt(float(nu(alpha, kmax))) + 3.0
    return np.linspace(1e-3, upper, int(math.ceil(upper / spacing)) + 1)


def sup_norm_scan(
    alpha: float,
    kmax: int,
    grid: Optional[np.ndarray] = None,
    derivative: bool = True,
    chunk: int = 512,
) -> SupScan:
    """Per-order grid maxima of |phi_k| and, for Hermite-class alpha, |phi_k'|."""
    grid = default_sup_grid(alpha, kmax) if grid is None else np.asarray(grid, dtype=float)
    derivative = derivative and is_hermite_class(alpha)
    phi_sup = np.zeros(kmax + 1)
    dphi_sup = np.zeros(kmax + 1) if derivative else None
    for start in range(0, grid.size, chunk):
        block = grid[start : start + chunk]
        phi_sup = np.maximum(phi_sup, np.max(np.abs(hermite_laguerre_sweep(alpha, block, kmax)), axis=1))
        if derivative:
            dphi_sup = np.maximum(dphi_sup, np.max(np.abs(hermite_laguerre_dx_sweep(alpha, block, kmax)), axis=1))
    logger.info("Sup-norm scan alpha=%s kmax=%d over %d points", alpha, kmax, grid.size)
    return SupScan(alpha=alpha, orders=np.arange(kmax + 1), phi_sup=phi_sup, dphi_sup=dphi_sup, grid_size=int(grid.size))


@lru_cache(maxsize=64)
def phi_sup_bound(alpha: float, kmax: int = 64, safety: float = 1.5) -> float:
    """Uniform bound C >= sup_u |phi_k^a(u)| used for series tail estimates (alpha >= -1/2)."""
    if alpha < -0.5:
        raise RangeError(f"phi_k^a is unbounded near 0 for alpha < -1/2, got {alpha}")
    grid = default_sup_grid(alpha, kmax, spacing=0.01)
    scan = sup_norm_scan(alpha, kmax, grid, derivative=False)
    return safety * float(np.max(scan.phi_sup))


__all__ = [
    "Envelope",
    "REGIMES",
    "SupScan",
    "calibrate_tail_gamma",
    "default_sup_grid",
    "envelope",
    "fit_envelope_constant",
    "phi_sup_bound",
    "regime_bounds",
    "sup_norm_scan",
]
