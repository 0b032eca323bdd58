"""Index and point types shared by every module."""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple, Union

from .errors import DimensionError, DomainError, RangeError

Number = Union[int, float]


def is_hermite_class(alpha: float) -> bool:
    """True for alpha in {-1/2} union [1/2, inf), where the derivative estimates hold."""
    return alpha == -0.5 or alpha >= 0.5


@dataclass(frozen=True)
class AlphaIndex:
    values: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise DimensionError("AlphaIndex needs at least one coordinate")
        for value in self.values:
            if not value > -1.0:
                raise RangeError(f"alpha must satisfy alpha > -1, got {value}")

    @classmethod
    def of(cls, alpha: Union[Number, Sequence[Number], "AlphaIndex"], d: int | None = None) -> "AlphaIndex":
        """Build from a scalar (optionally repeated d times), a sequence, or pass through."""
        if isinstance(alpha, AlphaIndex):
            index = alpha
        elif isinstance(alpha, numbers.Real):
            index = cls(tuple([float(alpha)] * (d or 1)))
        else:
            index = cls(tuple(float(a) for a in alpha))
        if d is not None and index.d != d:
            raise DimensionError(f"alpha has dimension {index.d}, expected {d}")
        return index

    @property
    def d(self) -> int:
        return len(self.values)

    @property
    def linf_ok(self) -> Tuple[bool, ...]:
        return tuple(a >= -0.5 for a in self.values)

    @property
    def hermite_class(self) -> Tuple[bool, ...]:
        return tuple(is_hermite_class(a) for a in self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)


@dataclass(frozen=True)
class MultiIndex:
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) < 1:
            raise DimensionError("MultiIndex needs at least one coordinate")
        for n in self.entries:
            if int(n) != n or n < 0:
                raise DomainError(f"multi-index entries must be nonnegative integers, got {self.entries}")

    @classmethod
    def of(cls, n: Union[int, Sequence[int], "MultiIndex"]) -> "MultiIndex":
        if isinstance(n, MultiIndex):
            return n
        if isinstance(n, numbers.Integral):
            return cls((int(n),))
        return cls(tuple(int(k) for k in n))

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def length(self) -> int:
        return sum(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    @staticmethod
    def shell(d: int, s: int) -> Iterator["MultiIndex"]:
        """Yield {n : |n| = s} in lexicographic order."""
        if d < 1:
            raise DimensionError(f"dimension must be >= 1, got {d}")
        if s < 0:
            return
        for entries in _compositions(d, s):
            yield MultiIndex(entries)

    @staticmethod
    def shell_size(d: int, s: int) -> int:
        from math import comb

        return comb(s + d - 1, d - 1)


def _compositions(d: int, s: int) -> Iterator[Tuple[int, ...]]:
    if d == 1:
        yield (s,)
        return
    for first in range(s + 1):
        for rest in _compositions(d - 1, s - first):
            yield (first,) + rest


@dataclass(frozen=True)
class EvalPoint:
    coords: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 1:
            raise DimensionError("EvalPoint needs at least one coordinate")
        for c in self.coords:
            if not c > 0.0:
                raise DomainError(f"evaluation points must have positive coordinates, got {self.coords}")

    @classmethod
    def of(cls, x: Union[Number, Sequence[Number], "EvalPoint"]) -> "EvalPoint":
        if isinstance(x, EvalPoint):
            return x
        if isinstance(x, numbers.Real):
            return cls((float(x),))
        return cls(tuple(float(c) for c in x))

    @property
    def d(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> float:
        return self.coords[i]

    def __iter__(self) -> Iterator[float]:
        return iter(self.coords)


def check_dims(*items: AlphaIndex | MultiIndex | EvalPoint) -> int:
    dims = {item.d for item in items}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {[item.d for item in items]}")
    return dims.pop()


__all__ = ["AlphaIndex", "EvalPoint", "MultiIndex", "check_dims", "is_hermite_class"]
