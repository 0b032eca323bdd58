"""The smoothing kernel R_r, its derivative, norms and Gram matrices."""
from __future__ import annotations

from .closed import (
    Branch,
    KernelQuery,
    SmoothingParam,
    kernel_closed,
    kernel_dx,
    kernel_dxj_multi,
    kernel_multi,
    kernel_series,
    log_kernel,
    select_branch,
)
from .gram import interval_gram, smoothed_norm_sq, spectral_norm_sq
from .norms import (
    NormScanReport,
    default_x_grid,
    l2_norm_kernel,
    l2_norm_kernel_dx,
    norm_scaling_scan,
    parseval_bound,
    sup_parseval_bound,
)
from .operator import apply_operator, contraction_ratio, semigroup_defect

__all__ = [
    "Branch",
    "KernelQuery",
    "NormScanReport",
    "SmoothingParam",
    "apply_operator",
    "contraction_ratio",
    "default_x_grid",
    "interval_gram",
    "kernel_closed",
    "kernel_dx",
    "kernel_dxj_multi",
    "kernel_multi",
    "kernel_series",
    "l2_norm_kernel",
    "l2_norm_kernel_dx",
    "log_kernel",
    "norm_scaling_scan",
    "parseval_bound",
    "select_branch",
    "semigroup_defect",
    "smoothed_norm_sq",
    "spectral_norm_sq",
    "sup_parseval_bound",
]
