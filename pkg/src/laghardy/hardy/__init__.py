"""H^1 atoms and the Hardy-type sums over their expansion coefficients."""
from __future__ import annotations

from .atoms import Atom, atom_family, make_atom, radius_for_measure
from .sums import (
    AtomIntegral,
    HardySumReport,
    UniformSumScan,
    atom_r_integral,
    atom_r_integral_checked,
    beta_asymptote,
    beta_identity_check,
    beta_reference,
    coefficient_size_ratio,
    hardy_sum,
    n_u_mask,
    uniform_phi_sum_scan,
)

__all__ = [
    "Atom",
    "AtomIntegral",
    "HardySumReport",
    "UniformSumScan",
    "atom_family",
    "atom_r_integral",
    "atom_r_integral_checked",
    "beta_asymptote",
    "beta_identity_check",
    "beta_reference",
    "coefficient_size_ratio",
    "hardy_sum",
    "make_atom",
    "n_u_mask",
    "radius_for_measure",
    "uniform_phi_sum_scan",
]
