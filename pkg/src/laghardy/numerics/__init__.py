"""Compensated summation, curve fits and ordered parallel maps."""
from __future__ import annotations

from .fitting import LogFit, PowerFit, bounded_ratio, dyadic_samples, log_fit, power_fit
from .parallel import parallel_map
from .summation import NeumaierSum, compensated_cumsum, compensated_sum

__all__ = [
    "LogFit",
    "NeumaierSum",
    "PowerFit",
    "bounded_ratio",
    "compensated_cumsum",
    "compensated_sum",
    "dyadic_samples",
    "log_fit",
    "parallel_map",
    "power_fit",
]
