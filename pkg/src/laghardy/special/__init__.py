"""Special functions: Laguerre families, modified Bessel functions, envelopes."""
from __future__ import annotations

from .asymptotic import asymptotic_phi
from .bessel import bessel_i_scaled, bessel_ratio, bessel_ratio_excess, log_bessel_i, log_bessel_i_scaled
from .envelope import (
    Envelope,
    SupScan,
    calibrate_tail_gamma,
    envelope,
    fit_envelope_constant,
    phi_sup_bound,
    sup_norm_scan,
)
from .laguerre import (
    boundary_value,
    hermite_laguerre_dx,
    hermite_laguerre_dx_sweep,
    hermite_laguerre_fn,
    hermite_laguerre_fn_multi,
    hermite_laguerre_sweep,
    laguerre_poly_seq,
    log_gamma,
    nu,
    standard_laguerre_fn,
    standard_laguerre_sweep,
)

__all__ = [
    "Envelope",
    "SupScan",
    "asymptotic_phi",
    "bessel_i_scaled",
    "bessel_ratio",
    "bessel_ratio_excess",
    "boundary_value",
    "calibrate_tail_gamma",
    "envelope",
    "fit_envelope_constant",
    "hermite_laguerre_dx",
    "hermite_laguerre_dx_sweep",
    "hermite_laguerre_fn",
    "hermite_laguerre_fn_multi",
    "hermite_laguerre_sweep",
    "laguerre_poly_seq",
    "log_bessel_i",
    "log_bessel_i_scaled",
    "log_gamma",
    "nu",
    "phi_sup_bound",
    "standard_laguerre_fn",
    "standard_laguerre_sweep",
    "sup_norm_scan",
]
