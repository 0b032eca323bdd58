"""The series sum_k {cos, sin}(t sqrt(k)) / k, summed directly and by parts.

Writing g(u) = cos(t sqrt(u)) (or sin) and summing by parts against H(k),

    S(K) = H(K) g(K) - int_1^K H(floor(u)) g'(u) du
         = gamma g(1) + I(K) + r(K) g(K) - int_1^K rho(u) g'(u) du,

with I(K) = int_1^K g(u)/u du = 2 int_t^{t sqrt(K)} {cos, sin}(v)/v dv and
rho(u) = H(floor(u)) - log u - gamma. The last integral is smooth on every
unit interval and is summed panel by panel.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..errors import BudgetError, DomainError
from ..numerics import NeumaierSum, compensated_sum
from ..quadrature.rules import PanelIntegral, composite_nodes
from .harmonic import EULER_GAMMA, harmonic_remainder

logger = logging.getLogger(__name__)

KINDS = ("cos", "sin")
CHUNK = 10**6
ZERO_PANEL_NODES = 20
TAIL_START = 2000.0
DENSE_RULE_LIMIT = 10**4

Amplitude = Callable[[np.ndarray], np.ndarray]


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise DomainError(f"kind must be one of {KINDS}, got {kind!r}")


def _check_t(t: float) -> None:
    if t == 0.0 or not math.isfinite(t):
        raise DomainError(f"t must be a nonzero finite real, got {t}")


def _check_K(K: int, lower: int = 1) -> int:
    from ..config import get_settings

    if int(K) != K or K < lower:
        raise DomainError(f"K must be an integer >= {lower}, got {K}")
    cap = get_settings().trig_k_cap
    if K > cap:
        raise BudgetError(f"K={K} exceeds the configured cap {cap}")
    return int(K)


def _trig(kind: str, v: np.ndarray) -> np.ndarray:
    return np.cos(v) if kind == "cos" else np.sin(v)


def trig_series_naive(t: float, kind: str, K: int) -> float:
    """sum_{k=1}^K {cos, sin}(t sqrt(k)) / k, in chunks with exact rounding per chunk."""
    _check_t(t)
    _check_kind(kind)
    K = _check_K(K)
    total = NeumaierSum()
    for start in range(1, K + 1, CHUNK):
        k = np.arange(start, min(start + CHUNK, K + 1), dtype=float)
        total.add(compensated_sum(_trig(kind, t * np.sqrt(k)) / k))
    return total.value


def trig_partial_sums(t: float, kind: str, Ks: Sequence[int]) -> List[float]:
    """Naive partial sums at increasing K, reusing the shorter sums."""
    _check_t(t)
    _check_kind(kind)
    out, total, done = [], NeumaierSum(), 0
    for K in Ks:
        K = _check_K(K)
        if K < done:
            raise DomainError("K values must be nondecreasing")
        for start in range(done + 1, K + 1, CHUNK):
            k = np.arange(start, min(start + CHUNK, K + 1), dtype=float)
            total.add(compensated_sum(_trig(kind, t * np.sqrt(k)) / k))
        done = K
        out.append(total.value)
    return out


def _reciprocal_derivatives(order: int) -> Amplitude:
    return lambda v: (-1.0) ** order * math.factorial(order) / v ** (order + 1)


def _zeros_between(kind: str, a: float, b: float) -> np.ndarray:
    """Zeros of cos (or sin) strictly inside (a, b)."""
    offset = 0.5 if kind == "cos" else 0.0
    j0 = math.floor(a / math.pi - offset) + 1
    j1 = math.ceil(b / math.pi - offset) - 1
    if j1 < j0:
        return np.empty(0)
    return (np.arange(j0, j1 + 1) + offset) * math.pi


def oscillatory_integral(
    kind: str,
    a: float,
    b: float = math.inf,
    amplitude: Optional[Amplitude] = None,
    derivatives: Optional[Sequence[Amplitude]] = None,
    tail_start: float = TAIL_START,
) -> PanelIntegral:
    """int_a^b g(v) {cos, sin}(v) dv for a slowly varying amplitude g (default 1/v).

    Panels run between consecutive zeros of the trigonometric factor, each
    with a 20-point Gauss rule. When b is infinite the part beyond
    V = max(a, tail_start) is Re/Im of i e^{iV} sum_j i^j g^(j)(V), with the
    derivatives g, g', ... supplied in ``derivatives``; the size of the last
    term is reported as the error.
    """
    _check_kind(kind)
    if amplitude is None:
        amplitude = _reciprocal_derivatives(0)
        derivatives = [_reciprocal_derivatives(j) for j in range(6)]
    if not a < b:
        raise DomainError(f"need a < b, got ({a}, {b})")
    upper = b if math.isfinite(b) else max(a, tail_start)
    value, error, panels = 0.0, 0.0, 0
    if upper > a:
        edges = np.concatenate([[a], _zeros_between(kind, a, upper), [upper]])
        nodes, weights = composite_nodes(edges, ZERO_PANEL_NODES)
        value = compensated_sum(weights * amplitude(nodes) * _trig(kind, nodes))
        panels = edges.size - 1
    if not math.isfinite(b):
        if not derivatives:
            raise DomainError("an infinite upper limit needs the amplitude derivatives")
        V = upper
        series = sum((1j**j) * complex(float(g(np.float64(V)))) for j, g in enumerate(derivatives))
        tail = 1j * complex(math.cos(V), math.sin(V)) * series
        value += tail.real if kind == "cos" else tail.imag
        error = abs(float(derivatives[-1](np.float64(V))))
    return PanelIntegral(value=float(value), error=error, panels=panels)


def _g_prime(t: float, kind: str, u: np.ndarray) -> np.ndarray:
    """d/du of {cos, sin}(t sqrt(u))."""
    s = np.sqrt(u)
    if kind == "cos":
        return -t * np.sin(t * s) / (2.0 * s)
    return t * np.cos(t * s) / (2.0 * s)


def _rho_integral(t: float, kind: str, K: int) -> float:
    """int_1^K rho(u) g'(u) du with rho(u) = r(floor u) - log1p((u - floor u) / floor u)."""
    total = NeumaierSum()
    for start in range(1, K, CHUNK):
        k = np.arange(start, min(start + CHUNK, K), dtype=float)
        npts = 8 if start < DENSE_RULE_LIMIT else 4
        x, w = composite_nodes(np.array([0.0, 1.0]), npts)
        u = k[:, None] + x[None, :]
        rho = harmonic_remainder(k.astype(np.int64))[:, None] - np.log1p(x[None, :] / k[:, None])
        total.add(compensated_sum(rho * _g_prime(t, kind, u) * w[None, :]))
    return total.value


def _term(t: float, kind: str, u: float) -> float:
    return float(_trig(kind, np.float64(t * math.sqrt(u)))) / u


def _term_prime(t: float, kind: str, u: float) -> float:
    return float(_g_prime(t, kind, np.float64(u))) / u - _term(t, kind, u) / u


@dataclass(frozen=True)
class TrigSeriesState:
    t: float
    kind: str
    K: int
    naive: float
    accelerated: float
    limit: float
    error: float

    def __post_init__(self) -> None:
        if self.K < 1:
            raise DomainError(f"K must be >= 1, got {self.K}")
        if not math.isfinite(self.accelerated):
            raise DomainError("accelerated estimate is not finite")

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def _integral_to(t: float, kind: str, K: float) -> float:
    """I(K) = int_1^K g(u)/u du = 2 sgn int_|t|^{|t| sqrt(K)} {cos, sin}(v)/v dv."""
    sign = -1.0 if (kind == "sin" and t < 0.0) else 1.0
    if K == 1:
        return 0.0
    return 2.0 * sign * oscillatory_integral(kind, abs(t), abs(t) * math.sqrt(K)).value


def _tail_from(t: float, kind: str, K: int) -> float:
    """sum_{k > K} g(k)/k by Euler-Maclaurin: int_K^inf - g(K)/(2K) - (g/u)'(K)/12."""
    sign = -1.0 if (kind == "sin" and t < 0.0) else 1.0
    integral = 2.0 * sign * oscillatory_integral(kind, abs(t) * math.sqrt(K)).value
    return integral - 0.5 * _term(t, kind, K) - _term_prime(t, kind, K) / 12.0


def trig_series_accelerated(t: float, kind: str, K: int) -> TrigSeriesState:
    """The summation-by-parts form of S(K) next to the naive sum, with the limit estimate."""
    _check_t(t)
    _check_kind(kind)
    K = _check_K(K, lower=2)
    g1 = float(_trig(kind, np.float64(t)))
    gK = float(_trig(kind, np.float64(t * math.sqrt(K))))
    parts = [
        EULER_GAMMA * g1,
        _integral_to(t, kind, K),
        float(harmonic_remainder(K)) * gK,
        -_rho_integral(t, kind, K),
    ]
    accelerated = compensated_sum(parts)
    naive = trig_series_naive(t, kind, K)
    limit = accelerated + _tail_from(t, kind, K)
    state = TrigSeriesState(
        t=float(t), kind=kind, K=K, naive=naive, accelerated=accelerated, limit=limit, error=abs(accelerated - naive)
    )
    logger.info("Trig series %s t=%g K=%d: naive=%.12f accelerated=%.12f limit=%.12f", kind, t, K, naive, accelerated, limit)
    return state


def trig_limit(t: float, kind: str, K: int = 10**4) -> float:
    return trig_series_accelerated(t, kind, K).limit


def cauchy_differences(t: float, kind: str, K0: int, K1: int) -> List[Dict[str, float]]:
    """|S(2K) - S(K)| for K doubling from K0 while 2K <= K1, next to the bound 4/(|t| sqrt(K))."""
    Ks = []
    K = K0
    while 2 * K <= K1:
        Ks.append(K)
        K *= 2
    sums = trig_partial_sums(t, kind, Ks + [2 * Ks[-1]] if Ks else [])
    return [
        {"K": K, "difference": abs(sums[i + 1] - sums[i]), "bound": 4.0 / (abs(t) * math.sqrt(K))} for i, K in enumerate(Ks)
    ]


__all__ = [
    "KINDS",
    "TrigSeriesState",
    "cauchy_differences",
    "oscillatory_integral",
    "trig_limit",
    "trig_partial_sums",
    "trig_series_accelerated",
    "trig_series_naive",
]
