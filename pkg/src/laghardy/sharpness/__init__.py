"""Trigonometric series, harmonic numbers, the inner series and the divergence demonstration."""
from __future__ import annotations

from .divergence import CosSquaredCheck, DivergenceReport, cos_squared_decomposition_check, divergence_demo
from .harmonic import EULER_GAMMA, harmonic_number, harmonic_remainder
from .inner import EnvelopeCheck, InnerDecayReport, InnerSeriesResult, envelope_series_check, inner_decay_scan, inner_series
from .trig import (
    TrigSeriesState,
    cauchy_differences,
    oscillatory_integral,
    trig_limit,
    trig_partial_sums,
    trig_series_accelerated,
    trig_series_naive,
)

__all__ = [
    "CosSquaredCheck",
    "DivergenceReport",
    "EULER_GAMMA",
    "EnvelopeCheck",
    "InnerDecayReport",
    "InnerSeriesResult",
    "TrigSeriesState",
    "cauchy_differences",
    "cos_squared_decomposition_check",
    "divergence_demo",
    "envelope_series_check",
    "harmonic_number",
    "harmonic_remainder",
    "inner_decay_scan",
    "inner_series",
    "oscillatory_integral",
    "trig_limit",
    "trig_partial_sums",
    "trig_series_accelerated",
    "trig_series_naive",
]
