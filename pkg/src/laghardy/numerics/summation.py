"""Compensated (Neumaier) summation.

Every accumulation of series terms in the package goes through here so that
regression-tested digits do not depend on summation order.
"""
from __future__ import annotations

import math
from typing import Iterable

import numpy as np


class NeumaierSum:
    """Incremental Kahan-Babuska-Neumaier summation.

    Unlike plain Kahan summation the carry is also correct when an added term
    is larger in magnitude than the running sum.
    """

    def __init__(self, start: float = 0.0) -> None:
        self.sum = float(start)
        self.carry = 0.0

    def add(self, value: float) -> "NeumaierSum":
        total = self.sum + value
        if abs(self.sum) >= abs(value):
            self.carry += (self.sum - total) + value
        else:
            self.carry += (value - total) + self.sum
        self.sum = total
        return self

    def extend(self, values: Iterable[float]) -> "NeumaierSum":
        for value in values:
            self.add(float(value))
        return self

    def __iadd__(self, value: float) -> "NeumaierSum":
        return self.add(float(value))

    @property
    def value(self) -> float:
        return self.sum + self.carry

    def __float__(self) -> float:
        return self.value


def compensated_sum(values: Iterable[float] | np.ndarray) -> float:
    """Correctly rounded sum of a finite sequence."""
    if isinstance(values, np.ndarray):
        values = values.ravel().tolist()
    return math.fsum(values)


def compensated_cumsum(values: np.ndarray, axis: int = 0) -> np.ndarray:
    """Running Neumaier sums along ``axis``; vectorized over the other axes."""
    arr = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    out = np.empty_like(arr)
    total = np.zeros(arr.shape[1:])
    carry = np.zeros(arr.shape[1:])
    for i in range(arr.shape[0]):
        term = arr[i]
        new = total + term
        carry += np.where(np.abs(total) >= np.abs(term), (total - new) + term, (term - new) + total)
        total = new
        out[i] = total + carry
    return np.moveaxis(out, 0, axis)


__all__ = ["NeumaierSum", "compensated_cumsum", "compensated_sum"]
