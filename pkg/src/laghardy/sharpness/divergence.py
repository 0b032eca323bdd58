"""Growth of sum_n |phi_n(x)| / (|n|+1)^beta at the critical exponent beta = 3d/4."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.signal import fftconvolve

from ..errors import DimensionError, DomainError
from ..numerics import LogFit, NeumaierSum, PowerFit, compensated_cumsum, compensated_sum, dyadic_samples, log_fit, power_fit
from ..special.asymptotic import asymptotic_phi
from ..special.laguerre import hermite_laguerre_sweep
from ..types import AlphaIndex, EvalPoint, check_dims
from .harmonic import harmonic_number
from .trig import CHUNK, trig_series_accelerated

logger = logging.getLogger(__name__)

FIT_FROM = 100
SURROGATE_FROM = 1000
LIMIT_K = 10**4


@dataclass
class DivergenceReport:
    alpha: Tuple[float, ...]
    x: Tuple[float, ...]
    beta: float
    nmax: int
    partial_sums: np.ndarray
    surrogate_from: Optional[int] = None
    fit: Optional[LogFit] = field(init=False)
    increments: Optional[PowerFit] = field(init=False)
    cauchy_tail: float = field(init=False)

    def __post_init__(self) -> None:
        S = self.partial_sums
        self.cauchy_tail = float(S[-1] - S[self.nmax // 2])
        if self.nmax >= 2 * FIT_FROM:
            samples = dyadic_samples(FIT_FROM, self.nmax)
            self.fit = log_fit(samples, S[samples])
            starts = dyadic_samples(FIT_FROM, self.nmax // 2)
            self.increments = power_fit(starts, S[np.minimum(2 * starts, self.nmax)] - S[starts])
        else:
            self.fit = None
            self.increments = None

    @property
    def d(self) -> int:
        return len(self.alpha)

    @property
    def value(self) -> float:
        return float(self.partial_sums[-1])

    def records(self) -> List[Dict[str, Any]]:
        out = []
        for n in dyadic_samples(1, self.nmax):
            out.append(
                {
                    "N": int(n),
                    "log_N": math.log(n),
                    "S": float(self.partial_sums[n]),
                    "surrogate": self.surrogate_from is not None and n >= self.surrogate_from,
                }
            )
        return out

    def summary(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "beta": self.beta,
            "d": self.d,
            "nmax": self.nmax,
            "value": self.value,
            "cauchy_tail": self.cauchy_tail,
            "surrogate_from": self.surrogate_from,
        }
        if self.fit is not None:
            out["log_slope"] = self.fit.slope
            out["log_intercept"] = self.fit.intercept
            out["log_r_squared"] = self.fit.r_squared
        if self.increments is not None:
            out["increment_exponent"] = self.increments.exponent
        return out


def _axis_magnitudes(alpha: float, x: float, nmax: int, exact_to: int) -> np.ndarray:
    """|phi_k(x)| for k <= nmax; the calibrated asymptotic form beyond exact_to."""
    head = np.abs(hermite_laguerre_sweep(alpha, x, min(nmax, exact_to)))
    if nmax <= exact_to:
        return head
    k = np.arange(exact_to + 1, nmax + 1, dtype=float)
    return np.concatenate([head, np.abs(asymptotic_phi(alpha, k, x, calibrated=True))])


def divergence_demo(
    alpha: AlphaIndex | float | Sequence[float],
    x: EvalPoint | float | Sequence[float],
    beta: float,
    nmax: int,
) -> DivergenceReport:
    """Shell sums of |phi_n(x)| / (|n|+1)^beta for N = 0..nmax.

    d=1 is exact to any nmax. For d=2 the shells beyond 1000 are built from
    the calibrated asymptotic form of the factors and are flagged in the
    report.
    """
    alpha = AlphaIndex.of(alpha)
    x = EvalPoint.of(x)
    d = check_dims(alpha, x)
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta}")
    if int(nmax) != nmax or nmax < 1:
        raise DomainError(f"nmax must be a positive integer, got {nmax}")
    if any(xi <= 0.0 for xi in x):
        raise DomainError("the evaluation point must lie in the open orthant")
    surrogate_from = None
    if d == 1:
        shells = np.abs(hermite_laguerre_sweep(alpha[0], x[0], nmax))
    elif d == 2:
        a1, a2 = (_axis_magnitudes(alpha[i], x[i], nmax, SURROGATE_FROM) for i in range(2))
        if nmax <= SURROGATE_FROM:
            shells = np.convolve(a1, a2)[: nmax + 1]
        else:
            shells = np.concatenate(
                [np.convolve(a1[: SURROGATE_FROM + 1], a2[: SURROGATE_FROM + 1])[: SURROGATE_FROM + 1],
                 fftconvolve(a1, a2)[SURROGATE_FROM + 1 : nmax + 1]]
            )
            surrogate_from = SURROGATE_FROM + 1
            logger.warning("Shells beyond %d use the asymptotic surrogate", SURROGATE_FROM)
    else:
        raise DimensionError(f"divergence demo is built for d in {{1, 2}}, got d={d}")
    terms = shells / np.arange(1, nmax + 2, dtype=float) ** beta
    report = DivergenceReport(
        alpha=alpha.values,
        x=x.coords,
        beta=float(beta),
        nmax=int(nmax),
        partial_sums=compensated_cumsum(terms),
        surrogate_from=surrogate_from,
    )
    logger.info("Divergence demo d=%d beta=%g Nmax=%d: %s", d, beta, nmax, report.summary())
    return report


@dataclass(frozen=True)
class CosSquaredCheck:
    u: float
    beta: float
    K: int
    total: float
    main: float
    termwise_max_error: float
    remainder_limit: float

    @property
    def remainder(self) -> float:
        return self.total - self.main

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.total, self.main, self.remainder)

    def record(self) -> Dict[str, float]:
        return {
            "K": self.K,
            "total": self.total,
            "main": self.main,
            "remainder": self.remainder,
            "remainder_limit": self.remainder_limit,
            "termwise_max_error": self.termwise_max_error,
        }


def _phase(beta: float) -> Tuple[float, float]:
    angle = math.pi * (2.0 * beta + 1.0) / 2.0
    return math.cos(angle), math.sin(angle)


def cos_squared_decomposition_check(u: float, beta: float, K: int, limit_K: int = LIMIT_K) -> CosSquaredCheck:
    """sum_{k<=K} cos^2(2 sqrt(k) u - pi(2beta+1)/4)/k split into H(K)/2 and an oscillatory remainder.

    The remainder is (c S_cos(K) + s S_sin(K)) / 2 with S the trigonometric
    series at t = 4u and (c, s) the phase of pi(2beta+1)/2; its limit comes
    from the accelerated series.
    """
    if not u > 0.0:
        raise DomainError(f"u must be positive, got {u}")
    if int(K) != K or K < 10:
        raise DomainError(f"K must be an integer >= 10, got {K}")
    c, s = _phase(beta)
    shift = math.pi * (2.0 * beta + 1.0) / 4.0
    total, worst = NeumaierSum(), 0.0
    for start in range(1, int(K) + 1, CHUNK):
        k = np.arange(start, min(start + CHUNK, int(K) + 1), dtype=float)
        root = np.sqrt(k)
        lhs = np.cos(2.0 * root * u - shift) ** 2
        rhs = 0.5 * (1.0 + np.cos(4.0 * root * u) * c + np.sin(4.0 * root * u) * s)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        total.add(compensated_sum(lhs / k))
    limits = [trig_series_accelerated(4.0 * u, kind, limit_K).limit for kind in ("cos", "sin")]
    return CosSquaredCheck(
        u=float(u),
        beta=float(beta),
        K=int(K),
        total=total.value,
        main=0.5 * harmonic_number(int(K)),
        termwise_max_error=worst,
        remainder_limit=0.5 * (c * limits[0] + s * limits[1]),
    )


__all__ = ["CosSquaredCheck", "DivergenceReport", "cos_squared_decomposition_check", "divergence_demo"]
