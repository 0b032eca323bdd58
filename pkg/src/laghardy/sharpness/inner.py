"""The inner series T(n) = sum_k cos(sqrt(k)) / (n + k)^(d+1) and its decay in n."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.special import zeta

from ..errors import BudgetError, DomainError
from ..numerics import NeumaierSum, PowerFit, bounded_ratio, compensated_sum, power_fit
from .trig import CHUNK, oscillatory_integral

logger = logging.getLogger(__name__)

START_K = 4096
RELATIVE_AGREEMENT = 1e-12
TAIL_START = 1e4


def _check(n_abs: int, d: int) -> None:
    if int(n_abs) != n_abs or n_abs < 1:
        raise DomainError(f"n_abs must be an integer >= 1, got {n_abs}")
    if int(d) != d or d < 1:
        raise DomainError(f"d must be an integer >= 1, got {d}")


def _chunk_sum(n: int, d: int, lo: int, hi: int) -> float:
    """sum_{lo <= k <= hi} cos(sqrt(k)) / (n + k)^(d+1)."""
    total = NeumaierSum()
    for start in range(lo, hi + 1, CHUNK):
        k = np.arange(start, min(start + CHUNK, hi + 1), dtype=float)
        total.add(compensated_sum(np.cos(np.sqrt(k)) / (n + k) ** (d + 1)))
    return total.value


def _tail(n: int, d: int, K: int) -> float:
    """sum_{k > K} by Euler-Maclaurin, the integral in v = sqrt(u) with amplitude 2v/(n+v^2)^(d+1)."""
    amplitude = [
        lambda v: 2.0 * v / (n + v * v) ** (d + 1),
        lambda v: 2.0 * (n - (2 * d + 1) * v * v) / (n + v * v) ** (d + 2),
        lambda v: 4.0 * (d + 1) * v * ((2 * d + 1) * v * v - 3.0 * n) / (n + v * v) ** (d + 3),
    ]
    integral = oscillatory_integral(
        "cos", math.sqrt(K), amplitude=amplitude[0], derivatives=amplitude, tail_start=TAIL_START
    ).value
    s = math.sqrt(K)
    h = math.cos(s) / (n + K) ** (d + 1)
    dh = -math.sin(s) / (2.0 * s * (n + K) ** (d + 1)) - (d + 1) * math.cos(s) / (n + K) ** (d + 2)
    return integral - 0.5 * h - dh / 12.0


@dataclass(frozen=True)
class InnerSeriesResult:
    n_abs: int
    d: int
    K: int
    partial: float
    tail_correction: float
    envelope_bound: float
    error: float

    @property
    def value(self) -> float:
        return self.partial + self.tail_correction

    def __float__(self) -> float:
        return self.value


def _result(n: int, d: int, K: int, partial: float) -> InnerSeriesResult:
    return InnerSeriesResult(
        n_abs=n,
        d=d,
        K=K,
        partial=partial,
        tail_correction=_tail(n, d, K),
        envelope_bound=(n + K) ** -d / d,
        # leading size of the next Euler-Maclaurin term
        error=(n + K) ** -(d + 1) * K**-1.5 / 5760.0,
    )


def inner_series(n_abs: int, d: int, K: Optional[int] = None) -> InnerSeriesResult:
    """T(n) summed to K with the tail beyond K added back.

    ``partial`` is the plain sum over k <= K. Without K the cut-off doubles
    from max(4096, 4n) until two successive corrected values agree to 1e-12.
    """
    from ..config import get_settings

    _check(n_abs, d)
    n, d = int(n_abs), int(d)
    cap = get_settings().trig_k_cap
    if K is not None:
        if int(K) != K or K < 1:
            raise DomainError(f"K must be an integer >= 1, got {K}")
        if K > cap:
            raise BudgetError(f"K={K} exceeds the configured cap {cap}")
        return _result(n, d, int(K), _chunk_sum(n, d, 1, int(K)))
    K = max(START_K, 4 * n)
    partial = _chunk_sum(n, d, 1, K)
    previous = _result(n, d, K, partial)
    while 2 * K <= cap:
        partial += _chunk_sum(n, d, K + 1, 2 * K)
        K *= 2
        current = _result(n, d, K, partial)
        change = abs(current.value - previous.value)
        if change <= RELATIVE_AGREEMENT * abs(current.value):
            result = replace(current, error=change)
            logger.debug("Inner series n=%d d=%d converged at K=%d: %.15g", n, d, K, result.value)
            return result
        previous = current
    raise BudgetError(f"inner series n={n} d={d} did not settle below K={cap}")


@dataclass(frozen=True)
class EnvelopeCheck:
    n_abs: int
    d: int
    hurwitz: float
    bound: float

    @property
    def ratio(self) -> float:
        return self.hurwitz / self.bound


def envelope_series_check(n_abs: int, d: int) -> EnvelopeCheck:
    """sum_{k>=1} (n+k)^(-d-1) = zeta(d+1, n+1) against its integral bound n^(-d)/d."""
    _check(n_abs, d)
    return EnvelopeCheck(n_abs=int(n_abs), d=int(d), hurwitz=float(zeta(d + 1, n_abs + 1)), bound=n_abs ** -d / d)


@dataclass
class InnerDecayReport:
    d: int
    n_values: List[int]
    values: List[float]
    exponent: float

    @property
    def normalized(self) -> List[float]:
        return [abs(v) * n**self.exponent for n, v in zip(self.n_values, self.values)]

    @property
    def ratio(self) -> float:
        return bounded_ratio(self.normalized)

    @property
    def fit(self) -> PowerFit:
        return power_fit(self.n_values, self.values)

    def dominated(self, factor: float = 10.0) -> bool:
        """Every normalized value is at most ``factor`` times the one at the smallest n."""
        norm = self.normalized
        return all(v <= factor * norm[0] for v in norm)

    def records(self) -> List[Dict[str, float]]:
        return [
            {"n": n, "value": v, "normalized": s} for n, v, s in zip(self.n_values, self.values, self.normalized)
        ]

    def summary(self) -> Dict[str, float]:
        return {"d": self.d, "fitted_exponent": self.fit.exponent, "ratio": self.ratio, "dominated": self.dominated()}


def inner_decay_scan(n_values: Sequence[int], d: int) -> InnerDecayReport:
    values = [inner_series(n, d).value for n in n_values]
    report = InnerDecayReport(d=int(d), n_values=[int(n) for n in n_values], values=values, exponent=d + 0.25)
    logger.info("Inner series decay d=%d: fitted exponent %.3f", d, report.fit.exponent)
    return report


__all__ = [
    "EnvelopeCheck",
    "InnerDecayReport",
    "InnerSeriesResult",
    "envelope_series_check",
    "inner_decay_scan",
    "inner_series",
]
