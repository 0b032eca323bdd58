from __future__ import annotations

import math
from typing import Union

import numpy as np

from ..errors import DomainError, RangeError

ArrayLike = Union[float, np.ndarray]

AMPLITUDE_AS_STATED = 1.0 / math.sqrt(math.pi)
AMPLITUDE_EXACT = math.sqrt(2.0 / math.pi)


def asymptotic_phi(beta: float, k: ArrayLike, u: ArrayLike, calibrated: bool = False) -> ArrayLike:
    """Oscillatory main term A k^{-1/4} cos(2 sqrt(k) u - pi (2 beta + 1) / 4).

    A is pi^{-1/2} by default; ``calibrated=True`` uses the exact leading
    amplitude sqrt(2/pi) of phi_k^beta(u) as k -> infinity.
    """
    if beta < -0.5:
        raise RangeError(f"asymptotic form needs beta >= -1/2, got {beta}")
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr < 1.0):
        raise DomainError("asymptotic form needs k >= 1")
    amplitude = AMPLITUDE_EXACT if calibrated else AMPLITUDE_AS_STATED
    phase = math.pi * (2.0 * beta + 1.0) / 4.0
    out = amplitude * k_arr**-0.25 * np.cos(2.0 * np.sqrt(k_arr) * np.asarray(u, dtype=float) - phase)
    return float(out) if np.ndim(out) == 0 else out


__all__ = ["AMPLITUDE_AS_STATED", "AMPLITUDE_EXACT", "asymptotic_phi"]
