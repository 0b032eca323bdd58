"""L2 norms of R_r(x, .) and of its x-derivative, and their scaling in 1 - r."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..errors import DomainError, RangeError
from ..numerics import bounded_ratio, compensated_sum, parallel_map
from ..quadrature.rules import integrate_panels
from ..special.envelope import sup_norm_scan
from ..special.laguerre import hermite_laguerre_sweep, nu
from ..types import is_hermite_class
from .closed import SmoothingParam, kernel_closed, kernel_dx

logger = logging.getLogger(__name__)

PEAK_OFFSETS = np.array([-12.0, -4.0, -1.5, 0.0, 1.5, 4.0, 12.0])
NORM_RTOL = 1e-8
KINDS = ("kernel", "dx", "dx_product")
EXPONENTS = {"kernel": 0.25, "dx": 0.75, "dx_product": 1.0}


def y_cutoff(r: SmoothingParam, x: float) -> float:
    """Upper limit x + 12 sqrt((1-r)/(1+r)) + 3 of the y-integration."""
    return x + 12.0 * r.width + 3.0


def y_breakpoints(r: SmoothingParam, x: float) -> np.ndarray:
    """Panel edges on (0, cutoff): graded at the kernel peak and towards 0, at most 1 apart."""
    upper = y_cutoff(r, x)
    w = r.width
    peak = r.peak(x) + w * PEAK_OFFSETS
    head = min(w, 0.5) * np.array([1 / 64, 1 / 16, 1 / 4, 1.0])
    body = np.linspace(0.0, upper, int(math.ceil(upper)) + 1)
    edges = np.concatenate([body, head, peak, [x]])
    return np.unique(edges[(edges >= 0.0) & (edges <= upper)])


def _norm(integrand: Callable[[np.ndarray], np.ndarray], r: SmoothingParam, x: float, rtol: float) -> float:
    result = integrate_panels(lambda y: integrand(y) ** 2, y_breakpoints(r, x), npts=20, rtol=rtol)
    return math.sqrt(result.value)


def l2_norm_kernel(alpha: float, r: SmoothingParam | float, x: float, rtol: float = NORM_RTOL) -> float:
    """||R_r^a(x, .)||_{L2(R_+)} by panel quadrature with a Gaussian-tail cutoff."""
    if alpha < -0.5:
        raise RangeError(f"kernel norms are computed for alpha >= -1/2, got {alpha}")
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x}")
    r = SmoothingParam.of(r)
    return _norm(lambda y: kernel_closed(alpha, r, x, y), r, x, rtol)


def l2_norm_kernel_dx(alpha: float, r: SmoothingParam | float, x: float, rtol: float = NORM_RTOL) -> float:
    """||d/dx R_r^a(x, .)||_{L2(R_+)}; alpha in {-1/2} U [1/2, inf)."""
    if not is_hermite_class(alpha):
        raise RangeError(f"derivative norms need alpha in {{-1/2}} U [1/2, inf), got {alpha}")
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x}")
    r = SmoothingParam.of(r)
    return _norm(lambda y: kernel_dx(alpha, r, x, y), r, x, rtol)


def parseval_bound(alpha: float, r: SmoothingParam | float, x: float, tol: float = 1e-14) -> float:
    """(sum_k r^{2k} phi_k(x)^2)^{1/2}, the exact L2 norm of R_r(x, .)."""
    r = SmoothingParam.of(r)
    from ..config import get_settings

    cap = get_settings().series_term_cap
    kmax = min(cap, max(1, int(math.ceil(math.log(tol) / (2.0 * math.log(r.r))))))
    phi = hermite_laguerre_sweep(alpha, x, kmax)
    powers = np.exp(2.0 * np.arange(kmax + 1) * math.log(r.r))
    return math.sqrt(compensated_sum(powers * phi**2))


def sup_parseval_bound(alpha: float, r: SmoothingParam | float, kmax: int = 200) -> float:
    """(sum_k r^{2k} ||phi_k||_inf^2)^{1/2} from grid maxima, with the tail beyond kmax bounded geometrically."""
    r = SmoothingParam.of(r)
    scan = sup_norm_scan(alpha, kmax, derivative=False)
    powers = np.exp(2.0 * np.arange(kmax + 1) * math.log(r.r))
    head = compensated_sum(powers * scan.phi_sup**2)
    c = float(np.max(scan.phi_sup))
    tail = c * c * r.r ** (2 * (kmax + 1)) / (1.0 - r.r * r.r)
    return math.sqrt(head + tail)


def default_x_grid(alpha: float) -> np.ndarray:
    """200 log-spaced points on [1e-3, 20] plus the point sqrt(nu(alpha, 0))."""
    grid = np.geomspace(1e-3, 20.0, 200)
    return np.unique(np.append(grid, math.sqrt(float(nu(alpha, 0)))))


@dataclass
class NormScanReport:
    alpha: float
    kind: str
    p: float
    r_values: List[float]
    sup_norms: List[float]
    argmax_x: List[float]
    d: int = 1
    rescaled: List[float] = field(init=False)
    ratio: float = field(init=False)

    def __post_init__(self) -> None:
        if not (len(self.r_values) == len(self.sup_norms) == len(self.argmax_x)):
            raise ValueError("r values, norms and maximizers must have equal length")
        self.rescaled = [n * (1.0 - r) ** self.p for r, n in zip(self.r_values, self.sup_norms)]
        self.ratio = bounded_ratio(self.rescaled)

    def records(self) -> List[Dict[str, float]]:
        return [
            {"r": r, "sup_norm": n, "argmax_x": x, "rescaled": s}
            for r, n, x, s in zip(self.r_values, self.sup_norms, self.argmax_x, self.rescaled)
        ]

    def summary(self) -> Dict[str, float]:
        return {"alpha": self.alpha, "kind": self.kind, "p": self.p, "d": self.d, "ratio": self.ratio}


def sup_over_x(
    norm: Callable[[float], float],
    grid: Sequence[float],
    threads: Optional[int] = None,
) -> tuple[float, float]:
    values = parallel_map(norm, list(grid), threads=threads)
    i = int(np.argmax(values))
    return float(values[i]), float(grid[i])


def norm_scaling_scan(
    alpha: float,
    r_values: Sequence[float],
    kind: str = "kernel",
    p: Optional[float] = None,
    x_grid: Optional[Sequence[float]] = None,
    threads: Optional[int] = None,
) -> NormScanReport:
    """sup_x of the requested norm for every r, with rescaling by (1-r)^p.

    ``dx_product`` is the d=2 derivative norm ||d/dx1 R_r(x, .)||, which by the
    product structure equals the sup of the 1-D derivative norm times the sup
    of the 1-D kernel norm.
    """
    if kind not in KINDS:
        raise DomainError(f"kind must be one of {KINDS}, got {kind!r}")
    p = EXPONENTS[kind] if p is None else float(p)
    grid = default_x_grid(alpha) if x_grid is None else np.asarray(x_grid, dtype=float)
    sups, argmax = [], []
    for r in r_values:
        param = SmoothingParam.of(r)
        if kind == "kernel":
            value, at = sup_over_x(lambda x: l2_norm_kernel(alpha, param, x), grid, threads)
        else:
            value, at = sup_over_x(lambda x: l2_norm_kernel_dx(alpha, param, x), grid, threads)
            if kind == "dx_product":
                other, _ = sup_over_x(lambda x: l2_norm_kernel(alpha, param, x), grid, threads)
                value *= other
        logger.info("Norm scan %s alpha=%s r=%s: sup=%.6g at x=%.4g", kind, alpha, r, value, at)
        sups.append(value)
        argmax.append(at)
    return NormScanReport(
        alpha=float(alpha),
        kind=kind,
        p=p,
        r_values=[float(r) for r in r_values],
        sup_norms=sups,
        argmax_x=argmax,
        d=2 if kind == "dx_product" else 1,
    )


__all__ = [
    "NormScanReport",
    "default_x_grid",
    "l2_norm_kernel",
    "l2_norm_kernel_dx",
    "norm_scaling_scan",
    "parseval_bound",
    "sup_over_x",
    "sup_parseval_bound",
    "y_breakpoints",
    "y_cutoff",
]
