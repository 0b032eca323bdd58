"""The operator R_r applied to functions, by kernel quadrature or spectrally."""
from __future__ import annotations

import logging
import math
from typing import Optional, Sequence

import numpy as np

from ..errors import BudgetError, DimensionError, DomainError
from ..numerics import compensated_sum
from ..quadrature.coefficients import TargetFunction, coefficients_up_to
from ..quadrature.rules import composite_nodes, integrate_panels, refine
from ..special.laguerre import hermite_laguerre_sweep
from ..types import AlphaIndex, EvalPoint
from .closed import SmoothingParam, kernel_closed
from .norms import y_breakpoints, y_cutoff

logger = logging.getLogger(__name__)

METHODS = ("kernel", "spectral")


def _axis_edges(r: SmoothingParam, x: float, upper: float, breaks: Sequence[float]) -> np.ndarray:
    edges = y_breakpoints(r, x)
    edges = np.concatenate([edges[edges < upper], [upper], [b for b in breaks if 0.0 < b < upper]])
    return np.unique(edges)


def _apply_kernel_1d(alpha: float, r: SmoothingParam, f: TargetFunction, x: float, rtol: float) -> float:
    upper = min(y_cutoff(r, x), f.upper[0])
    edges = _axis_edges(r, x, upper, f.axis_breakpoints(0))
    result = integrate_panels(lambda y: kernel_closed(alpha, r, x, y) * f(y), edges, npts=20, atol=1e-15, rtol=rtol)
    return result.value


def _apply_kernel_2d(alpha: AlphaIndex, r: SmoothingParam, f: TargetFunction, x: EvalPoint, rtol: float) -> float:
    from ..config import get_settings

    edges = [
        _axis_edges(r, x[i], min(y_cutoff(r, x[i]), f.upper[i]), f.axis_breakpoints(i)) for i in range(2)
    ]

    def estimate(e: list[np.ndarray]) -> float:
        (n1, w1), (n2, w2) = composite_nodes(e[0], 20), composite_nodes(e[1], 20)
        k1 = w1 * kernel_closed(alpha[0], r, x[0], n1)
        k2 = w2 * kernel_closed(alpha[1], r, x[1], n2)
        return compensated_sum(k1[:, None] * f(n1[:, None], n2[None, :]) * k2[None, :])

    prev = estimate(edges)
    for _ in range(get_settings().panel_doubling_cap):
        edges = [refine(e) for e in edges]
        cur = estimate(edges)
        if abs(cur - prev) <= max(1e-15, rtol * abs(cur)):
            return cur
        prev = cur
    raise BudgetError("tensor quadrature for R_r f did not converge")


def apply_spectral(alpha: AlphaIndex, r: SmoothingParam, f: TargetFunction, x: EvalPoint, nmax: int) -> float:
    """sum_{|n|<=nmax} r^{|n|} <f, phi_n> phi_n(x)."""
    table = coefficients_up_to(f, alpha, nmax, estimate_error=False)
    powers = np.exp(np.arange(nmax + 1) * math.log(r.r))
    phi = [hermite_laguerre_sweep(a, xi, nmax) for a, xi in zip(alpha, x)]
    if f.d == 1:
        return compensated_sum(powers * table.values * phi[0])
    shells = np.add.outer(np.arange(nmax + 1), np.arange(nmax + 1))
    weights = np.where(shells <= nmax, powers[np.minimum(shells, nmax)], 0.0)
    return compensated_sum(weights * table.values * np.multiply.outer(phi[0], phi[1]))


def apply_operator(
    alpha: AlphaIndex | float | Sequence[float],
    r: SmoothingParam | float,
    f: TargetFunction,
    x: EvalPoint | float | Sequence[float],
    method: str = "kernel",
    nmax: int = 200,
    rtol: float = 1e-10,
) -> float:
    """(R_r f)(x) = integral of R_r(x, y) f(y) dy, or its spectral form."""
    alpha = AlphaIndex.of(alpha, d=f.d)
    x = EvalPoint.of(x)
    if x.d != f.d:
        raise DimensionError(f"point has dimension {x.d}, function has {f.d}")
    r = SmoothingParam.of(r)
    if method == "spectral":
        return apply_spectral(alpha, r, f, x, nmax)
    if method != "kernel":
        raise DomainError(f"method must be one of {METHODS}, got {method!r}")
    if f.d == 1:
        return _apply_kernel_1d(alpha[0], r, f, x[0], rtol)
    return _apply_kernel_2d(alpha, r, f, x, rtol)


def _operator_grid(r: SmoothingParam, s: SmoothingParam, upper: float) -> tuple[np.ndarray, np.ndarray]:
    h = min(0.5, 0.5 * min(r.width, s.width))
    edges = np.linspace(0.0, upper, int(math.ceil(upper / h)) + 1)
    return composite_nodes(edges, 20)


def semigroup_defect(
    alpha: float,
    r: SmoothingParam | float,
    s: SmoothingParam | float,
    m: int,
    x_grid: Sequence[float],
) -> float:
    """max_x |(R_s R_r phi_m)(x) - (R_{rs} phi_m)(x)|, both sides by kernel quadrature."""
    r, s = SmoothingParam.of(r), SmoothingParam.of(s)
    rs = r.compose(s)
    xs = np.asarray(x_grid, dtype=float)
    upper = max(float(xs.max()), math.sqrt(4.0 * m + 2.0 * alpha + 2.0)) + 12.0
    nodes, weights = _operator_grid(r, s, upper)
    phi_m = hermite_laguerre_sweep(alpha, nodes, m)[m]
    inner = kernel_closed(alpha, r, nodes[:, None], nodes[None, :]) @ (weights * phi_m)
    lhs = kernel_closed(alpha, s, xs[:, None], nodes[None, :]) @ (weights * inner)
    rhs = kernel_closed(alpha, rs, xs[:, None], nodes[None, :]) @ (weights * phi_m)
    defect = float(np.max(np.abs(lhs - rhs)))
    logger.info("Semigroup defect alpha=%s r=%s s=%s m=%d: %.3e", alpha, r.r, s.r, m, defect)
    return defect


def contraction_ratio(
    alpha: AlphaIndex | float | Sequence[float],
    r: SmoothingParam | float,
    f: TargetFunction,
    nmax: Optional[int] = None,
) -> float:
    """||R_r f||_2 / ||f||_2 from the coefficient table."""
    r = SmoothingParam.of(r)
    if nmax is None:
        nmax = 400 if f.d == 1 else 100
    table = coefficients_up_to(f, alpha, nmax, estimate_error=False)
    shells = np.arange(nmax + 1) if f.d == 1 else np.add.outer(np.arange(nmax + 1), np.arange(nmax + 1))
    smoothed = compensated_sum(np.exp(2.0 * shells * math.log(r.r)) * table.values**2)
    return math.sqrt(smoothed / table.bessel_sum) if table.bessel_sum > 0.0 else 0.0


__all__ = ["apply_operator", "apply_spectral", "contraction_ratio", "semigroup_defect"]
