"""Laguerre functions of Hermite type and Hardy-type coefficient checks."""

__version__ = "0.1.0"

__all__ = ["__version__"]
