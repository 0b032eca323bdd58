"""Expansion coefficients <f, phi_n> in the Hermite-type Laguerre basis.

All orders up to Nmax come from one recurrence sweep per quadrature node.
Piecewise-constant targets are integrated cell by cell, so their coefficients
are c = P v (d=1) or C = P1 V P2^T (d=2) with P the cell-integral matrix.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..errors import BudgetError, DimensionError, DomainError
from ..numerics import compensated_sum
from ..special.laguerre import hermite_laguerre_sweep, nu
from ..types import AlphaIndex, MultiIndex
from .rules import composite_nodes, graded_edges

logger = logging.getLogger(__name__)

PANEL_PHASE = 4.0
MAX_PANEL = 0.5


@dataclass(frozen=True)
class CellProfile:
    """Piecewise-constant function on a tensor grid of cells."""

    edges: Tuple[np.ndarray, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        shape = tuple(e.size - 1 for e in self.edges)
        if self.values.shape != shape:
            raise DimensionError(f"cell values have shape {self.values.shape}, edges imply {shape}")

    @property
    def d(self) -> int:
        return len(self.edges)

    @property
    def cell_measure(self) -> np.ndarray:
        widths = [np.diff(e) for e in self.edges]
        if self.d == 1:
            return widths[0]
        return np.multiply.outer(widths[0], widths[1])

    def l2_norm_sq(self) -> float:
        return compensated_sum(self.values**2 * self.cell_measure)

    def __call__(self, *x: np.ndarray) -> np.ndarray:
        out_shape = np.broadcast(*x).shape
        index = []
        inside = np.ones(out_shape, dtype=bool)
        for axis, coord in enumerate(x):
            e = self.edges[axis]
            coord = np.broadcast_to(np.asarray(coord, dtype=float), out_shape)
            j = np.searchsorted(e, coord, side="right") - 1
            inside &= (j >= 0) & (j < e.size - 1)
            index.append(np.clip(j, 0, e.size - 2))
        return np.where(inside, self.values[tuple(index)], 0.0)


@dataclass(frozen=True)
class TargetFunction:
    """A function on R_+^d together with what quadrature needs to know about it.

    ``func`` is vectorized: f(x) for d=1, f(x1, x2) with broadcasting for d=2.
    ``upper`` bounds the region where f is not negligible, per axis, and
    ``order`` is the highest basis order whose oscillation f itself carries.
    """

    func: Callable[..., np.ndarray]
    d: int = 1
    upper: Tuple[float, ...] = (12.0,)
    breakpoints: Tuple[Tuple[float, ...], ...] = ()
    l2_norm: Optional[float] = None
    factors: Optional[Tuple[Callable[[np.ndarray], np.ndarray], ...]] = None
    cells: Optional[CellProfile] = None
    order: int = 0
    label: str = "f"

    def __post_init__(self) -> None:
        if self.d not in (1, 2):
            raise DimensionError(f"targets are supported for d in {{1, 2}}, got d={self.d}")
        if len(self.upper) != self.d:
            raise DimensionError(f"upper has {len(self.upper)} entries for d={self.d}")
        if self.factors is not None and len(self.factors) != self.d:
            raise DimensionError("one factor per coordinate is required")

    def axis_breakpoints(self, axis: int) -> Tuple[float, ...]:
        if self.cells is not None:
            return tuple(self.cells.edges[axis].tolist())
        return self.breakpoints[axis] if self.breakpoints else ()

    def __call__(self, *x: np.ndarray) -> np.ndarray:
        return self.func(*x)


@dataclass
class CoefficientTable:
    alpha: AlphaIndex
    nmax: int
    values: np.ndarray
    shell_accuracy: np.ndarray
    norm_sq: float
    bessel_sum: float = field(init=False)
    label: str = "f"

    def __post_init__(self) -> None:
        self.bessel_sum = compensated_sum(self.values**2)

    @property
    def d(self) -> int:
        return self.alpha.d

    def coefficient(self, n: MultiIndex | int | Sequence[int]) -> float:
        n = MultiIndex.of(n)
        if n.d != self.d:
            raise DimensionError(f"index {n.entries} has dimension {n.d}, table has {self.d}")
        if n.length > self.nmax:
            raise DomainError(f"|n|={n.length} exceeds the table's Nmax={self.nmax}")
        return float(self.values[n.entries])

    def shell(self, s: int) -> np.ndarray:
        """Coefficients with |n| = s in lexicographic order."""
        if self.d == 1:
            return self.values[s : s + 1]
        i = np.arange(s + 1)
        return self.values[i, s - i]

    def shell_abs_sums(self) -> np.ndarray:
        """sum_{|n|=s} |c_n| for s = 0..Nmax."""
        if self.d == 1:
            return np.abs(self.values)
        return np.array([compensated_sum(np.abs(self.shell(s))) for s in range(self.nmax + 1)])

    def bessel_ok(self, tol: float) -> bool:
        return self.bessel_sum <= self.norm_sq + tol


def _check_cap(d: int, nmax: int) -> None:
    from ..config import get_settings

    settings = get_settings()
    cap = settings.nmax_cap_1d if d == 1 else settings.nmax_cap_2d
    if nmax > cap:
        raise BudgetError(f"Nmax={nmax} exceeds the configured cap {cap} for d={d}")
    if nmax < 0:
        raise DomainError(f"Nmax must be >= 0, got {nmax}")


def panel_width(alpha: float, nmax: int) -> float:
    """Panel width resolving the oscillation of phi_k for every k <= nmax."""
    return min(MAX_PANEL, PANEL_PHASE / math.sqrt(float(nu(alpha, nmax))))


def axis_nodes(
    alpha: float,
    nmax: int,
    upper: float,
    breakpoints: Sequence[float] = (),
    npts: int = 20,
    refine: int = 1,
) -> Tuple[np.ndarray, np.ndarray]:
    h = panel_width(alpha, nmax) / refine
    edges = graded_edges(upper, h)
    extra = [b for b in breakpoints if 0.0 < b < upper]
    edges = np.unique(np.concatenate([edges, extra]))
    return composite_nodes(edges, npts)


def cell_matrix(alpha: float, edges: np.ndarray, nmax: int, npts: int = 20, refine: int = 1) -> np.ndarray:
    """P[k, j] = integral of phi_k over the j-th cell."""
    h = panel_width(alpha, nmax) / refine
    cells = edges.size - 1
    P = np.empty((nmax + 1, cells))
    for j in range(cells):
        a, b = float(edges[j]), float(edges[j + 1])
        panels = max(1, int(math.ceil((b - a) / h)))
        nodes, weights = composite_nodes(np.linspace(a, b, panels + 1), npts)
        P[:, j] = hermite_laguerre_sweep(alpha, nodes, nmax) @ weights
    return P


def _mask_shells(values: np.ndarray, nmax: int) -> np.ndarray:
    if values.ndim == 2:
        i, j = np.indices(values.shape)
        values = np.where(i + j <= nmax, values, 0.0)
    return values


def _cell_coefficients(profile: CellProfile, alpha: AlphaIndex, nmax: int, refine: int) -> np.ndarray:
    P = [cell_matrix(a, e, nmax, refine=refine) for a, e in zip(alpha, profile.edges)]
    if profile.d == 1:
        return P[0] @ profile.values
    return P[0] @ profile.values @ P[1].T


def _axis_coefficients(
    fn: Callable, alpha: float, nmax: int, upper: float, breaks: Sequence[float], refine: int, order: int = 0
) -> np.ndarray:
    nodes, weights = axis_nodes(alpha, max(nmax, order), upper, breaks, refine=refine)
    return hermite_laguerre_sweep(alpha, nodes, nmax) @ (weights * fn(nodes))


def _generic_coefficients(f: TargetFunction, alpha: AlphaIndex, nmax: int, refine: int) -> np.ndarray:
    if f.d == 1:
        return _axis_coefficients(f.func, alpha[0], nmax, f.upper[0], f.axis_breakpoints(0), refine, f.order)
    n1, w1 = axis_nodes(alpha[0], max(nmax, f.order), f.upper[0], f.axis_breakpoints(0), refine=refine)
    n2, w2 = axis_nodes(alpha[1], max(nmax, f.order), f.upper[1], f.axis_breakpoints(1), refine=refine)
    F = f.func(n1[:, None], n2[None, :])
    weighted = w1[:, None] * F * w2[None, :]
    return hermite_laguerre_sweep(alpha[0], n1, nmax) @ weighted @ hermite_laguerre_sweep(alpha[1], n2, nmax).T


def _coefficients(f: TargetFunction, alpha: AlphaIndex, nmax: int, refine: int) -> np.ndarray:
    if f.cells is not None:
        values = _cell_coefficients(f.cells, alpha, nmax, refine)
    elif f.factors is not None:
        axes = [
            _axis_coefficients(fn, a, nmax, up, f.axis_breakpoints(i), refine, f.order)
            for i, (fn, a, up) in enumerate(zip(f.factors, alpha, f.upper))
        ]
        values = axes[0] if f.d == 1 else np.multiply.outer(axes[0], axes[1])
    else:
        values = _generic_coefficients(f, alpha, nmax, refine)
    return _mask_shells(values, nmax)


def _norm_sq(f: TargetFunction, alpha: AlphaIndex, nmax: int) -> float:
    if f.l2_norm is not None:
        return f.l2_norm**2
    if f.cells is not None:
        return f.cells.l2_norm_sq()
    per_axis = []
    for i in range(f.d):
        per_axis.append(axis_nodes(alpha[i], max(nmax, f.order), f.upper[i], f.axis_breakpoints(i), refine=2))
    if f.d == 1:
        nodes, weights = per_axis[0]
        return compensated_sum(weights * f.func(nodes) ** 2)
    (n1, w1), (n2, w2) = per_axis
    F = f.func(n1[:, None], n2[None, :])
    return compensated_sum(w1[:, None] * F**2 * w2[None, :])


def _shell_maxima(diff: np.ndarray, nmax: int) -> np.ndarray:
    if diff.ndim == 1:
        return np.abs(diff)
    i, j = np.indices(diff.shape)
    shells = (i + j).ravel()
    out = np.zeros(nmax + 1)
    keep = shells <= nmax
    np.maximum.at(out, shells[keep], np.abs(diff).ravel()[keep])
    return out


def coefficients_up_to(
    f: TargetFunction,
    alpha: AlphaIndex | float | Sequence[float],
    nmax: int,
    estimate_error: bool = True,
) -> CoefficientTable:
    """Every <f, phi_n> with |n| <= nmax, plus a per-shell accuracy estimate."""
    alpha = AlphaIndex.of(alpha, d=f.d)
    _check_cap(f.d, nmax)
    values = _coefficients(f, alpha, nmax, refine=2)
    if estimate_error:
        accuracy = _shell_maxima(values - _coefficients(f, alpha, nmax, refine=1), nmax)
    else:
        accuracy = np.full(nmax + 1, np.nan)
    table = CoefficientTable(
        alpha=alpha,
        nmax=nmax,
        values=values,
        shell_accuracy=accuracy,
        norm_sq=_norm_sq(f, alpha, nmax),
        label=f.label,
    )
    logger.info(
        "Coefficients of %s up to Nmax=%d (d=%d): sum c^2=%.10g, |f|^2=%.10g",
        f.label,
        nmax,
        f.d,
        table.bessel_sum,
        table.norm_sq,
    )
    return table


def coefficient(f: TargetFunction, alpha: AlphaIndex | float | Sequence[float], n: MultiIndex | int | Sequence[int]) -> float:
    n = MultiIndex.of(n)
    table = coefficients_up_to(f, alpha, n.length, estimate_error=False)
    return table.coefficient(n)


def _phi_factor(alpha: float, k: int, scale: float) -> Callable[[np.ndarray], np.ndarray]:
    def factor(x: np.ndarray) -> np.ndarray:
        return scale * hermite_laguerre_sweep(alpha, x, k)[k]

    return factor


def phi_target(alpha: AlphaIndex | float | Sequence[float], terms: Mapping[Tuple[int, ...] | int, float]) -> TargetFunction:
    """Finite linear combination sum_m c_m phi_m as a target function."""
    index: Dict[MultiIndex, float] = {MultiIndex.of(m): float(c) for m, c in terms.items()}
    if not index:
        raise DomainError("phi_target needs at least one term")
    d = next(iter(index)).d
    alpha = AlphaIndex.of(alpha, d=d)
    top = [max(m.entries[i] for m in index) for i in range(d)]
    upper = tuple(math.sqrt(float(nu(alpha[i], top[i]))) + 8.0 for i in range(d))
    norm = math.sqrt(math.fsum(c * c for c in index.values()))

    def func(*x: np.ndarray) -> np.ndarray:
        shape = np.broadcast(*x).shape
        total = np.zeros(shape)
        sweeps = [hermite_laguerre_sweep(alpha[i], np.asarray(x[i], dtype=float), top[i]) for i in range(d)]
        for m, c in index.items():
            term = np.full(shape, c)
            for i in range(d):
                term = term * sweeps[i][m.entries[i]]
            total = total + term
        return total

    factors = None
    if len(index) == 1:
        (m, c), = index.items()
        factors = tuple(_phi_factor(alpha[i], m.entries[i], c if i == 0 else 1.0) for i in range(d))
    return TargetFunction(
        func=func, d=d, upper=upper, l2_norm=norm, factors=factors, order=max(top), label="phi-combination"
    )


def gram_matrix(alpha: float, nmax: int, npts: int = 20) -> np.ndarray:
    """G[n, m] = <phi_n, phi_m> by composite quadrature over (0, sqrt(nu) + 10)."""
    upper = math.sqrt(float(nu(alpha, nmax))) + 10.0
    nodes, weights = axis_nodes(alpha, nmax, upper, npts=npts)
    phi = hermite_laguerre_sweep(alpha, nodes, nmax)
    return (phi * weights) @ phi.T


__all__ = [
    "CellProfile",
    "CoefficientTable",
    "TargetFunction",
    "axis_nodes",
    "cell_matrix",
    "coefficient",
    "coefficients_up_to",
    "gram_matrix",
    "panel_width",
    "phi_target",
]
