"""Least-squares fits used to read growth laws off scans."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Dict, Sequence

import numpy as np


@dataclass(frozen=True)
class LogFit:
    """S(N) ~ slope * log N + intercept."""

    slope: float
    intercept: float
    r_squared: float
    npoints: int

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class PowerFit:
    """y ~ prefactor * x**exponent, fitted in log-log coordinates."""

    exponent: float
    prefactor: float
    r_squared: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def _linear(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    if x.size < 2:
        raise ValueError("a fit needs at least two points")
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum(residual**2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2


def log_fit(n: Sequence[float], s: Sequence[float]) -> LogFit:
    x = np.log(np.asarray(n, dtype=float))
    y = np.asarray(s, dtype=float)
    slope, intercept, r2 = _linear(x, y)
    return LogFit(slope=slope, intercept=intercept, r_squared=r2, npoints=int(x.size))


def power_fit(x: Sequence[float], y: Sequence[float]) -> PowerFit:
    xs = np.asarray(x, dtype=float)
    ys = np.abs(np.asarray(y, dtype=float))
    keep = (xs > 0) & (ys > 0)
    slope, intercept, r2 = _linear(np.log(xs[keep]), np.log(ys[keep]))
    return PowerFit(exponent=slope, prefactor=float(np.exp(intercept)), r_squared=r2)


def bounded_ratio(values: Sequence[float]) -> float:
    """max/min of positive values; inf when any value is zero or not finite."""
    arr = np.abs(np.asarray(values, dtype=float))
    if arr.size == 0:
        raise ValueError("bounded_ratio of an empty sequence")
    if not np.all(np.isfinite(arr)) or arr.min() == 0.0:
        return float("inf")
    return float(arr.max() / arr.min())


def dyadic_samples(lo: int, hi: int) -> np.ndarray:
    """Integers lo, 2lo, 4lo, ... up to hi, with hi itself appended."""
    out = []
    n = lo
    while n < hi:
        out.append(n)
        n *= 2
    out.append(hi)
    return np.asarray(out, dtype=np.int64)


__all__ = ["LogFit", "PowerFit", "bounded_ratio", "dyadic_samples", "log_fit", "power_fit"]
