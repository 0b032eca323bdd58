from __future__ import annotations

from typing import Iterable, Sequence


class LaghardyError(Exception):
    """Base class for every error raised by laghardy."""


class DomainError(LaghardyError, ValueError):
    """Argument lies outside the mathematical domain of a function."""


class RangeError(LaghardyError, ValueError):
    """Parameter outside its admissible range, or a result outside the floating-point range."""


class DimensionError(LaghardyError, ValueError):
    """Multi-dimensional arguments disagree on the dimension d."""


class BudgetError(LaghardyError, RuntimeError):
    """A configured cap on terms, panels or shells was exceeded."""


class ConstructionError(LaghardyError, ValueError):
    """An atom cannot be built from the requested geometry."""


class ConfigError(LaghardyError, ValueError):
    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field


class MissingInputError(LaghardyError, FileNotFoundError):
    def __init__(self, missing: Iterable[str]) -> None:
        self.missing: Sequence[str] = list(missing)
        listing = ", ".join(self.missing) if self.missing else "(no inputs given)"
        super().__init__(f"missing report inputs: {listing}")


__all__ = [
    "BudgetError",
    "ConfigError",
    "ConstructionError",
    "DimensionError",
    "DomainError",
    "LaghardyError",
    "MissingInputError",
    "RangeError",
]
