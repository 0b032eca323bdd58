"""Hardy sums, the atom r-integral, the Beta identity and uniform phi sums."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import betaln, gammaln, roots_jacobi

from ..errors import BudgetError, DomainError, RangeError
from ..kernel.closed import SmoothingParam
from ..kernel.gram import smoothed_norm_sq
from ..numerics import LogFit, compensated_cumsum, compensated_sum, dyadic_samples, log_fit, parallel_map
from ..quadrature.coefficients import CoefficientTable, TargetFunction, coefficients_up_to
from ..quadrature.rules import gauss_legendre
from ..special.laguerre import hermite_laguerre_sweep
from ..types import AlphaIndex, is_hermite_class
from .atoms import Atom

logger = logging.getLogger(__name__)

Source = Union[TargetFunction, Atom, CoefficientTable]

R_INTEGRAL_POINTS = 400
FIT_FLOOR = 10


@dataclass
class HardySumReport:
    beta: float
    d: int
    nmax: int
    shell_sums: np.ndarray
    partial_sums: np.ndarray
    label: str = "f"
    value: float = field(init=False)
    last_shell: float = field(init=False)
    cauchy_tail: float = field(init=False)
    dyadic_differences: List[Tuple[int, float]] = field(init=False)
    fit: Optional[LogFit] = field(init=False)

    def __post_init__(self) -> None:
        S = self.partial_sums
        self.value = float(S[-1])
        self.last_shell = float(S[-1] - S[-2]) if S.size > 1 else float(S[-1])
        self.cauchy_tail = float(S[-1] - S[self.nmax // 2]) if self.nmax >= 1 else 0.0
        self.dyadic_differences = []
        if self.nmax >= 2:
            for n in dyadic_samples(1, self.nmax // 2):
                self.dyadic_differences.append((int(n), float(S[min(2 * n, self.nmax)] - S[n])))
        if self.nmax >= 4 * FIT_FLOOR:
            samples = dyadic_samples(FIT_FLOOR, self.nmax)
            self.fit = log_fit(samples, S[samples])
        else:
            self.fit = None

    def records(self) -> List[Dict[str, Any]]:
        samples = dyadic_samples(1, self.nmax) if self.nmax else [0]
        return [{"N": int(n), "S": float(self.partial_sums[n])} for n in samples]

    def summary(self) -> Dict[str, Any]:
        out = {
            "label": self.label,
            "beta": self.beta,
            "d": self.d,
            "nmax": self.nmax,
            "value": self.value,
            "last_shell": self.last_shell,
            "cauchy_tail": self.cauchy_tail,
        }
        if self.fit is not None:
            out["log_slope"] = self.fit.slope
            out["log_r_squared"] = self.fit.r_squared
        return out


def _table(source: Source, alpha: AlphaIndex | float | Sequence[float], nmax: int) -> CoefficientTable:
    if isinstance(source, CoefficientTable):
        if nmax > source.nmax:
            raise DomainError(f"table only holds shells up to {source.nmax}, asked for {nmax}")
        return source
    target = source.to_target() if isinstance(source, Atom) else source
    return coefficients_up_to(target, alpha, nmax, estimate_error=False)


def hardy_sum(source: Source, alpha: AlphaIndex | float | Sequence[float], beta: float, nmax: int) -> HardySumReport:
    """Shell-ordered partial sums of |<f, phi_n>| / (|n| + 1)^beta."""
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta}")
    table = _table(source, alpha, nmax)
    shells = table.shell_abs_sums()[: nmax + 1]
    terms = shells / np.arange(1, nmax + 2, dtype=float) ** beta
    partial = compensated_cumsum(terms)
    report = HardySumReport(
        beta=float(beta), d=table.d, nmax=nmax, shell_sums=shells, partial_sums=partial, label=table.label
    )
    logger.info("Hardy sum %s beta=%g Nmax=%d: S=%.8g, tail=%.3e", table.label, beta, nmax, report.value, report.cauchy_tail)
    return report


def coefficient_size_ratio(table: CoefficientTable, l1_norm: float) -> float:
    """max_n |c_n| / (||f||_1 prod (n_i + 1)^(-1/12)), the constant in the coefficient bound."""
    n = np.arange(table.nmax + 1, dtype=float)
    weight = (n + 1.0) ** (1.0 / 12.0)
    scaled = np.abs(table.values) * (weight if table.d == 1 else np.multiply.outer(weight, weight))
    return float(scaled.max()) / l1_norm


def _r_of_s(s: float, d: int) -> SmoothingParam:
    """r = 1 - s^(4/d), which makes the weight (1-r)^((d-4)/4) dr equal to (4/d) ds."""
    gap = s ** (4.0 / d)
    return SmoothingParam(r=-math.expm1((4.0 / d) * math.log(s)), gap=gap)


def atom_r_integral(
    atom: Atom,
    alpha: AlphaIndex | float | Sequence[float],
    npts: int = R_INTEGRAL_POINTS,
    threads: Optional[int] = None,
) -> float:
    """Integral over r in (0, 1) of ||R_r a||_2 (1-r)^((d-4)/4), on a Gauss mesh in s."""
    alpha = AlphaIndex.of(alpha, d=atom.d)
    if not all(alpha.hermite_class):
        raise RangeError(f"atom integral needs alpha in {{-1/2}} U [1/2, inf), got {alpha.values}")
    rule = gauss_legendre(npts, 0.0, 1.0)
    edges, values = atom.edge_arrays, atom.values

    def integrand(s: float) -> float:
        return math.sqrt(max(0.0, smoothed_norm_sq(alpha.values, _r_of_s(s, atom.d), edges, values)))

    samples = parallel_map(integrand, rule.nodes.tolist(), threads=threads)
    value = (4.0 / atom.d) * compensated_sum(rule.weights * np.asarray(samples))
    logger.info("Atom r-integral d=%d |B|=%.3g npts=%d: %.8g", atom.d, atom.ball_measure, npts, value)
    return value


@dataclass(frozen=True)
class AtomIntegral:
    atom: Atom
    value: float
    refined: float

    @property
    def relative_change(self) -> float:
        return abs(self.refined - self.value) / abs(self.refined) if self.refined else 0.0

    def record(self) -> Dict[str, Any]:
        return {
            "d": self.atom.d,
            "measure": self.atom.ball_measure,
            "seed": self.atom.seed,
            "value": self.value,
            "refined": self.refined,
            "relative_change": self.relative_change,
        }


def atom_r_integral_checked(
    atom: Atom,
    alpha: AlphaIndex | float | Sequence[float],
    npts: int = R_INTEGRAL_POINTS,
    threads: Optional[int] = None,
) -> AtomIntegral:
    """The r-integral on npts and on 2*npts Gauss points."""
    return AtomIntegral(
        atom=atom,
        value=atom_r_integral(atom, alpha, npts, threads),
        refined=atom_r_integral(atom, alpha, 2 * npts, threads),
    )


def beta_reference(n_abs: int, d: int) -> float:
    """B(2n+1, 3d/4), the exact value of the r-integral of r^(2n) (1-r)^((3d-4)/4)."""
    return math.exp(betaln(2 * n_abs + 1, 0.75 * d))


def beta_asymptote(d: int) -> float:
    """Gamma(3d/4) 2^(-3d/4), the limit of B(2n+1, 3d/4) (n+1)^(3d/4)."""
    return math.exp(gammaln(0.75 * d) - 0.75 * d * math.log(2.0))


def beta_identity_check(n_abs: int, d: int) -> Tuple[float, float]:
    """(I, I (n+1)^(3d/4)) with I the r-integral, by Gauss-Jacobi quadrature exact for the polynomial part."""
    if int(n_abs) != n_abs or n_abs < 0:
        raise DomainError(f"n_abs must be a nonnegative integer, got {n_abs}")
    if int(d) != d or d < 1:
        raise DomainError(f"d must be a positive integer, got {d}")
    a = (3.0 * d - 4.0) / 4.0
    x, w = roots_jacobi(int(n_abs) + 1, a, 0.0)
    r = 0.5 * (1.0 + x)
    integral = 2.0 ** (-a - 1.0) * compensated_sum(w * r ** (2 * int(n_abs)))
    return integral, integral * (n_abs + 1) ** (0.75 * d)


def n_u_mask(alpha: float, k: np.ndarray, u: np.ndarray) -> np.ndarray:
    """k in N_u: nu~/2 <= u^2 <= 3 nu~/2 with nu~ = 4k + 2 alpha + 2."""
    nu_t = 4.0 * k + 2.0 * alpha + 2.0
    u2 = u * u
    return (0.5 * nu_t <= u2) & (u2 <= 1.5 * nu_t)


@dataclass
class UniformSumScan:
    alpha: float
    eps: float
    K: int
    u: np.ndarray
    totals: np.ndarray
    half_totals: np.ndarray
    in_set: np.ndarray
    dyadic_K: np.ndarray
    dyadic_totals: np.ndarray

    @property
    def tails(self) -> np.ndarray:
        return self.totals - self.half_totals

    @property
    def grid_max(self) -> float:
        return float(self.totals.max())

    @property
    def argmax_u(self) -> float:
        return float(self.u[int(np.argmax(self.totals))])

    def records(self) -> List[Dict[str, float]]:
        return [
            {"u": float(u), "S": float(s), "S_half": float(h), "tail": float(s - h), "in_set": float(i), "out_set": float(s - i)}
            for u, s, h, i in zip(self.u, self.totals, self.half_totals, self.in_set)
        ]

    def summary(self) -> Dict[str, float]:
        return {
            "alpha": self.alpha,
            "eps": self.eps,
            "K": self.K,
            "grid_max": self.grid_max,
            "argmax_u": self.argmax_u,
            "max_tail": float(self.tails.max()),
        }


def uniform_phi_sum_scan(
    alpha: float,
    eps: float,
    u_grid: Sequence[float],
    K: int,
    chunk: int = 64,
    threads: Optional[int] = None,
) -> UniformSumScan:
    """For each u: sum_{k=1}^K |phi_k(u)| / k^(3/4 + eps), its value at K/2, and the part from N_u."""
    from ..config import get_settings

    if alpha < -0.5:
        raise RangeError(f"phi_k^alpha is unbounded for alpha < -1/2, got {alpha}")
    cap = get_settings().series_term_cap
    if K > cap:
        raise BudgetError(f"K={K} exceeds the configured cap {cap}")
    if K < 2:
        raise DomainError(f"K must be >= 2, got {K}")
    u = np.asarray(u_grid, dtype=float)
    k = np.arange(1, K + 1, dtype=float)
    weights = k ** -(0.75 + eps)
    dyadic = dyadic_samples(1, K)

    def block(start: int) -> Tuple[np.ndarray, ...]:
        ub = u[start : start + chunk]
        terms = np.abs(hermite_laguerre_sweep(alpha, ub, K)[1:]) * weights[:, None]
        running = compensated_cumsum(terms, axis=0)
        inside = np.sum(np.where(n_u_mask(alpha, k[:, None], ub[None, :]), terms, 0.0), axis=0)
        return running[-1], running[K // 2 - 1], inside, running[dyadic - 1]

    parts = parallel_map(block, list(range(0, u.size, chunk)), threads=threads)
    totals = np.concatenate([p[0] for p in parts])
    scan = UniformSumScan(
        alpha=float(alpha),
        eps=float(eps),
        K=int(K),
        u=u,
        totals=totals,
        half_totals=np.concatenate([p[1] for p in parts]),
        in_set=np.concatenate([p[2] for p in parts]),
        dyadic_K=dyadic,
        dyadic_totals=np.concatenate([p[3] for p in parts], axis=1),
    )
    logger.info("Uniform phi-sum scan alpha=%s eps=%s K=%d: max %.6g at u=%.4g", alpha, eps, K, scan.grid_max, scan.argmax_u)
    return scan


__all__ = [
    "AtomIntegral",
    "HardySumReport",
    "UniformSumScan",
    "atom_r_integral",
    "atom_r_integral_checked",
    "beta_asymptote",
    "beta_identity_check",
    "beta_reference",
    "coefficient_size_ratio",
    "hardy_sum",
    "n_u_mask",
    "uniform_phi_sum_scan",
]
