"""Gauss-Legendre rules, composite panels and half-line integration."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.special import roots_legendre

from ..errors import BudgetError, DomainError
from ..numerics import compensated_sum

logger = logging.getLogger(__name__)

MAX_NODES = 10_000


@lru_cache(maxsize=256)
def _reference(npts: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = roots_legendre(npts)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    a: float
    b: float

    @property
    def interval(self) -> Tuple[float, float]:
        return (self.a, self.b)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        return compensated_sum(self.weights * f(self.nodes))


def gauss_legendre(npts: int, a: float, b: float) -> QuadratureRule:
    """npts-point rule on (a, b), exact for polynomials of degree <= 2*npts - 1."""
    if int(npts) != npts or not 1 <= npts <= MAX_NODES:
        raise DomainError(f"npts must be an integer in [1, {MAX_NODES}], got {npts}")
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError(f"need finite a < b, got ({a}, {b})")
    x, w = _reference(int(npts))
    half = 0.5 * (b - a)
    return QuadratureRule(nodes=half * x + 0.5 * (a + b), weights=half * w, a=float(a), b=float(b))


def composite_nodes(edges: Sequence[float], npts: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of an npts-point rule on every panel [edges[i], edges[i+1]].

    Zero-length panels contribute nodes at the panel point with zero weight.
    """
    e = np.asarray(edges, dtype=float)
    x, w = _reference(int(npts))
    half = 0.5 * np.diff(e)
    mid = 0.5 * (e[1:] + e[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def refine(edges: np.ndarray) -> np.ndarray:
    """Halve every panel."""
    mids = 0.5 * (edges[1:] + edges[:-1])
    out = np.empty(2 * edges.size - 1)
    out[0::2] = edges
    out[1::2] = mids
    return out


@dataclass(frozen=True)
class PanelIntegral:
    value: float
    error: float
    panels: int


def integrate_panels(
    f: Callable[[np.ndarray], np.ndarray],
    edges: Sequence[float],
    npts: int = 20,
    atol: float = 0.0,
    rtol: float = 1e-10,
    max_doublings: Optional[int] = None,
) -> PanelIntegral:
    """Composite Gauss-Legendre with panel doubling until two estimates agree."""
    if max_doublings is None:
        from ..config import get_settings

        max_doublings = get_settings().panel_doubling_cap
    e = np.unique(np.asarray(edges, dtype=float))
    nodes, weights = composite_nodes(e, npts)
    prev = compensated_sum(weights * f(nodes))
    err = math.inf
    for level in range(max_doublings):
        e = refine(e)
        nodes, weights = composite_nodes(e, npts)
        cur = compensated_sum(weights * f(nodes))
        err = abs(cur - prev)
        if err <= max(atol, rtol * abs(cur)):
            return PanelIntegral(value=cur, error=err, panels=e.size - 1)
        logger.debug("Doubling %d: %d panels, change %.3e", level + 1, e.size - 1, err)
        prev = cur
    raise BudgetError(f"panel quadrature did not converge after {max_doublings} doublings (last change {err:.3e})")


def graded_edges(upper: float, width: float, grading: Sequence[float] = (1 / 256, 1 / 64, 1 / 16, 1 / 4)) -> np.ndarray:
    """Panels of ``width`` on (0, upper), geometrically graded towards 0."""
    body = np.arange(0.0, upper, width)
    head = width * np.asarray(grading, dtype=float)
    return np.unique(np.concatenate([body, head[head < upper], [upper]]))


def integrate_halfline(
    f: Callable[[np.ndarray], np.ndarray],
    sigma: float,
    tol: Optional[float] = None,
    M: float = 1.0,
    center: float = 0.0,
    npts: int = 20,
) -> float:
    """Integral of f over (0, inf) given |f(u)| <= M exp(-(u - center)^2 / (2 sigma^2)) for u >= center.

    The cutoff U makes the Gaussian tail bound M sigma sqrt(pi/2) exp(-(U-center)^2/(2 sigma^2)) < tol.
    """
    if not sigma > 0.0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    if tol is None:
        from ..config import get_settings

        tol = get_settings().tol_1d
    ratio = M * sigma * math.sqrt(math.pi / 2.0) / tol
    U = center + sigma * math.sqrt(2.0 * math.log(ratio)) if ratio > 1.0 else center + sigma
    edges = graded_edges(U, min(sigma, 1.0))
    result = integrate_panels(f, edges, npts=npts, atol=tol, rtol=0.0)
    logger.debug("Half-line integral over (0, %.3f): %d panels", U, result.panels)
    return result.value


__all__ = [
    "PanelIntegral",
    "QuadratureRule",
    "composite_nodes",
    "gauss_legendre",
    "graded_edges",
    "integrate_halfline",
    "integrate_panels",
    "refine",
]
