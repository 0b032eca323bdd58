"""Gauss quadrature on panels and expansion coefficients."""
from __future__ import annotations

from .coefficients import (
    CellProfile,
    CoefficientTable,
    TargetFunction,
    axis_nodes,
    cell_matrix,
    coefficient,
    coefficients_up_to,
    gram_matrix,
    phi_target,
)
from .rules import (
    PanelIntegral,
    QuadratureRule,
    composite_nodes,
    gauss_legendre,
    graded_edges,
    integrate_halfline,
    integrate_panels,
)

__all__ = [
    "CellProfile",
    "CoefficientTable",
    "PanelIntegral",
    "QuadratureRule",
    "TargetFunction",
    "axis_nodes",
    "cell_matrix",
    "coefficient",
    "coefficients_up_to",
    "composite_nodes",
    "gauss_legendre",
    "graded_edges",
    "gram_matrix",
    "integrate_halfline",
    "integrate_panels",
    "phi_target",
]
