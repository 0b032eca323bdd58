"""Gram matrices of the kernel over intervals.

For a step function a = sum_j v_j 1_{I_j} the self-adjointness of R_r and
R_r R_r = R_{r^2} give ||R_r a||^2 = v^T K v with

    K[j, l] = integral over I_j x I_l of R_{r^2}(y, y').

When the kernel is wide compared to the cells K is a plain tensor Gauss rule.
When it is narrow the integrand is concentrated along the diagonal and K is
assembled from the row integrals m(y) = int R(y, y') dy' and corner integrals

    C(a, b) = int_{y < a} int_{y' > b} R(y, y') dy' dy,    a <= b,

which only see a window of width H around the edges:

    K[j, l] = delta_jl int_{I_j} m - [C(e_{j+1}, e_{l+1}) - C(e_j, e_{l+1}) - C(e_{j+1}, e_l) + C(e_j, e_l)]

with C(p, q) read as C(min, max).
"""
from __future__ import annotations

import logging
import math
from typing import Tuple

import numpy as np

from ..errors import DomainError
from ..quadrature.rules import composite_nodes
from .closed import SmoothingParam, kernel_closed

logger = logging.getLogger(__name__)

GRADING = np.array([0.0, 0.25, 1.0, 2.5, 5.0, 9.0, 14.0])
CORNER_NODES = 6
ROW_NODES = 6
CELL_NODES = 16


def window(rho: SmoothingParam, edges: np.ndarray) -> float:
    """Half-width H = 12 w + (1 - rho)(X + 1) beyond which R_rho(y, .) is negligible."""
    return 12.0 * rho.width + rho.gap * (float(edges[-1]) + 1.0)


def _offsets(rho: SmoothingParam, H: float) -> np.ndarray:
    """Graded panel edges (in units of length) from 0 out to H."""
    scaled = H / rho.width
    grid = np.concatenate([GRADING[GRADING < scaled], np.arange(20.0, scaled, 6.0), [scaled]])
    return rho.width * np.unique(grid)


def direct_gram(alpha: float, rho: SmoothingParam, edges: np.ndarray) -> np.ndarray:
    widths = np.diff(edges)
    npts = 6 + int(math.ceil(4.0 * widths.max() / rho.width))
    x, w = composite_nodes(np.array([-1.0, 1.0]), npts)
    nodes = 0.5 * (edges[:-1, None] + edges[1:, None]) + 0.5 * widths[:, None] * x[None, :]
    weights = 0.5 * widths[:, None] * w[None, :]
    flat = nodes.ravel()
    R = kernel_closed(alpha, rho, flat[:, None], flat[None, :]).reshape(nodes.shape + nodes.shape)
    return np.einsum("ia,iajb,jb->ij", weights, R, weights)


def _row_nodes(edges: np.ndarray, rho: SmoothingParam) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Outer nodes per cell (graded at 0 when a cell starts there) and their cell index."""
    nodes, weights, owner = [], [], []
    for j in range(edges.size - 1):
        a, b = float(edges[j]), float(edges[j + 1])
        cuts = np.linspace(a, b, int(math.ceil((b - a) / 0.5)) + 1)
        if a == 0.0:
            head = rho.width * np.array([0.25, 1.0, 4.0])
            cuts = np.unique(np.concatenate([cuts, head[head < b]]))
        n, w = composite_nodes(cuts, CELL_NODES)
        nodes.append(n)
        weights.append(w)
        owner.append(np.full(n.size, j))
    return np.concatenate(nodes), np.concatenate(weights), np.concatenate(owner)


def row_integrals(alpha: float, rho: SmoothingParam, y: np.ndarray, H: float) -> np.ndarray:
    """m(y) = integral of R_rho(y, y') over y' in (max(0, y - H), y + H)."""
    out = np.empty(y.shape)
    off = _offsets(rho, H)
    sym = np.concatenate([-off[::-1], off[1:]])
    o, wo = composite_nodes(sym, ROW_NODES)
    far = y >= H
    if np.any(far):
        yf = y[far]
        out[far] = kernel_closed(alpha, rho, yf[:, None], yf[:, None] + o[None, :]) @ wo
    if np.any(~far):
        yn = y[~far]
        top = float(yn.max()) + H
        panels = int(math.ceil(top / (0.5 * rho.width)))
        cuts = np.unique(np.concatenate([np.linspace(0.0, top, panels + 1), rho.width * np.array([1 / 64, 1 / 16, 1 / 4])]))
        g, wg = composite_nodes(cuts[cuts <= top], ROW_NODES)
        out[~far] = kernel_closed(alpha, rho, yn[:, None], g[None, :]) @ wg
    return out


def corner_integrals(alpha: float, rho: SmoothingParam, a: np.ndarray, b: np.ndarray, H: float) -> np.ndarray:
    """C(a, b) for paired arrays with a <= b; zero when a <= 0 or b - a >= H."""
    out = np.zeros(a.shape)
    live = (a > 0.0) & (b - a < H)
    if not np.any(live):
        return out
    off = _offsets(rho, H)
    al, bl = a[live], b[live]
    lo = np.maximum(0.0, bl - H)
    # y runs down from a, y' runs up from b; clipped panels get zero weight
    y_edges = np.clip(al[:, None] - off[None, :], lo[:, None], al[:, None])[:, ::-1]
    yp_edges = bl[:, None] + off[None, :]
    ref, wref = composite_nodes(np.array([-1.0, 1.0]), CORNER_NODES)

    def panel_nodes(e: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        half = 0.5 * np.diff(e, axis=1)
        mid = 0.5 * (e[:, 1:] + e[:, :-1])
        nodes = (mid[:, :, None] + half[:, :, None] * ref[None, None, :]).reshape(e.shape[0], -1)
        weights = (half[:, :, None] * wref[None, None, :]).reshape(e.shape[0], -1)
        return nodes, weights

    yn, yw = panel_nodes(y_edges)
    pn, pw = panel_nodes(yp_edges)
    safe_y = np.where(yw > 0.0, yn, al[:, None])
    R = kernel_closed(alpha, rho, safe_y[:, :, None], pn[:, None, :])
    out[live] = np.einsum("pi,pij,pj->p", yw, R, pw)
    return out


def corner_gram(alpha: float, rho: SmoothingParam, edges: np.ndarray) -> np.ndarray:
    H = window(rho, edges)
    nodes, weights, owner = _row_nodes(edges, rho)
    m = row_integrals(alpha, rho, nodes, H)
    cells = edges.size - 1
    diag = np.bincount(owner, weights=weights * m, minlength=cells)
    p, q = np.triu_indices(edges.size)
    C = np.zeros((edges.size, edges.size))
    C[p, q] = corner_integrals(alpha, rho, edges[p], edges[q], H)
    C = C + C.T - np.diag(np.diag(C))
    return np.diag(diag) - (C[1:, 1:] - C[:-1, 1:] - C[1:, :-1] + C[:-1, :-1])


def interval_gram(alpha: float, rho: SmoothingParam | float, edges: np.ndarray) -> np.ndarray:
    """K[j, l] = integral over I_j x I_l of R_rho, for cells I_j = (edges[j], edges[j+1])."""
    rho = SmoothingParam.of(rho)
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0.0) or edges[0] < 0.0:
        raise DomainError("cell edges must be increasing and nonnegative")
    if rho.width >= 0.5 * float(np.diff(edges).max()):
        return direct_gram(alpha, rho, edges)
    return corner_gram(alpha, rho, edges)


def smoothed_norm_sq(
    alpha: Tuple[float, ...],
    r: SmoothingParam | float,
    edges: Tuple[np.ndarray, ...],
    values: np.ndarray,
) -> float:
    """||R_r a||_2^2 for a step function on a tensor grid (d = 1 or 2)."""
    rho = SmoothingParam.of(r).squared()
    grams = []
    for i, e in enumerate(edges):
        if i > 0 and alpha[i] == alpha[0] and np.array_equal(e, edges[0]):
            grams.append(grams[0])
        else:
            grams.append(interval_gram(alpha[i], rho, e))
    if len(edges) == 1:
        return float(values @ grams[0] @ values)
    return float(np.sum(values * (grams[0] @ values @ grams[1].T)))


def spectral_norm_sq(alpha: float, r: SmoothingParam | float, edges: np.ndarray, values: np.ndarray, nmax: int) -> float:
    """sum_k r^{2k} c_k^2 for a one-dimensional step function, from exact cell integrals."""
    from ..quadrature.coefficients import cell_matrix

    r = SmoothingParam.of(r)
    c = cell_matrix(alpha, np.asarray(edges, dtype=float), nmax) @ values
    powers = np.exp(2.0 * np.arange(nmax + 1) * math.log(r.r))
    return float(np.sum(powers * c * c))


__all__ = [
    "corner_gram",
    "corner_integrals",
    "direct_gram",
    "interval_gram",
    "row_integrals",
    "smoothed_norm_sq",
    "spectral_norm_sq",
    "window",
]
