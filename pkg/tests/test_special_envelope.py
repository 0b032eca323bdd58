"""Unit tests for laghardy.special.envelope and laghardy.special.asymptotic."""
from __future__ import annotations

import math

import numpy as np
import pytest


class TestEnvelope:
    """Tests for the pointwise regime envelope."""

    @pytest.mark.parametrize(
        "u, regime",
        [(0.1, "small"), (1.0, "flat"), (1.8, "turning"), (3.0, "tail")],
    )
    def test_regimes_for_order_zero(self, u: float, regime: str) -> None:
        """With nu = 3 the breakpoints are 1/sqrt(3), sqrt(3/2) and sqrt(9/2)."""
        from laghardy.special import envelope

        env = envelope(0.5, 0, u)

        assert env.regime == regime
        assert env.nu == 3.0

    def test_flat_bound(self) -> None:
        """In the flat regime the bound is C nu^(-1/4)."""
        from laghardy.special import envelope

        env = envelope(0.5, 10, 2.0, C=2.0)

        assert env.regime == "flat"
        assert env.bound == pytest.approx(2.0 * 43.0**-0.25)

    def test_tail_uses_gamma(self) -> None:
        """The tail bound is sqrt(u) exp(-gamma u^2)."""
        from laghardy.special import envelope

        env = envelope(0.5, 0, 4.0, gamma=0.25)

        assert env.bound == pytest.approx(2.0 * math.exp(-4.0))

    def test_rejects_alpha_below_minus_half(self) -> None:
        """Envelope estimates need alpha >= -1/2."""
        from laghardy.errors import RangeError
        from laghardy.special import envelope

        with pytest.raises(RangeError):
            envelope(-0.75, 0, 1.0)

    def test_rejects_nonpositive_u(self) -> None:
        """u = 0 is outside the envelope's domain."""
        from laghardy.errors import DomainError
        from laghardy.special import envelope

        with pytest.raises(DomainError):
            envelope(0.5, 0, 0.0)

    def test_fitted_constant_dominates(self) -> None:
        """C times the bound covers |phi_k| at every grid point."""
        from laghardy.special import fit_envelope_constant, hermite_laguerre_sweep
        from laghardy.special.envelope import regime_bounds

        grid = np.linspace(0.01, 12.0, 800)
        C = fit_envelope_constant(0.5, 30, grid, gamma=0.05)
        phi = np.abs(hermite_laguerre_sweep(0.5, grid, 30))

        for k in range(31):
            _, bound = regime_bounds(0.5, k, grid, 0.05)
            assert np.all(phi[k] <= C * bound)
        assert 0.1 < C < 10.0

    def test_calibrated_gamma_in_range(self) -> None:
        """The calibrated tail rate lies in (0, 1/2]."""
        from laghardy.special import calibrate_tail_gamma

        gamma = calibrate_tail_gamma(0.5, 20, np.linspace(0.01, 15.0, 600))

        assert 0.0 < gamma <= 0.5


class TestSupNormScan:
    """Tests for sup_norm_scan and phi_sup_bound."""

    def test_order_zero_maximum(self) -> None:
        """sup |phi_0^(1/2)| is attained at x = 1 with value 0.9112."""
        from laghardy.special import sup_norm_scan

        scan = sup_norm_scan(0.5, 5)

        assert scan.phi_sup.shape == (6,)
        assert scan.phi_sup[0] == pytest.approx(math.sqrt(2.0 / math.gamma(1.5)) * math.exp(-0.5), rel=1e-4)
        assert scan.dphi_sup is not None

    def test_no_derivative_outside_hermite_class(self) -> None:
        """alpha = 0 gives phi sups only."""
        from laghardy.special import sup_norm_scan

        scan = sup_norm_scan(0.0, 5)

        assert scan.dphi_sup is None

    def test_sups_decay_slowly(self) -> None:
        """sup_x |phi_k| decays no faster than about k^(-1/6) and stays bounded."""
        from laghardy.special import sup_norm_scan

        scan = sup_norm_scan(0.5, 100, derivative=False)

        assert np.all(scan.phi_sup < 1.5)
        assert scan.phi_sup[100] > 0.2

    def test_phi_sup_bound_covers_scan(self) -> None:
        """The safety-factored bound exceeds every scanned sup."""
        from laghardy.special import phi_sup_bound, sup_norm_scan

        bound = phi_sup_bound(0.5, 20)

        assert bound >= np.max(sup_norm_scan(0.5, 20, derivative=False).phi_sup)

    def test_phi_sup_bound_rejects_unbounded_alpha(self) -> None:
        """alpha < -1/2 has no uniform bound."""
        from laghardy.errors import RangeError
        from laghardy.special import phi_sup_bound

        with pytest.raises(RangeError):
            phi_sup_bound(-0.75)


class TestAsymptoticPhi:
    """Tests for the oscillatory main term."""

    def test_calibrated_amplitude_tracks_phi(self) -> None:
        """At k = 400 the calibrated form follows phi_k within a small multiple of k^(-1/4)."""
        from laghardy.special import asymptotic_phi, hermite_laguerre_fn

        k = 400
        for u in (0.7, 1.0, 1.5):
            diff = abs(hermite_laguerre_fn(0.5, k, u) - asymptotic_phi(0.5, k, u, calibrated=True))
            assert diff < 0.2 * k**-0.25

    def test_default_amplitude_ratio(self) -> None:
        """The default amplitude is pi^(-1/2), a factor sqrt(2) below the calibrated one."""
        from laghardy.special import asymptotic_phi

        ratio = asymptotic_phi(0.5, 9, 0.3) / asymptotic_phi(0.5, 9, 0.3, calibrated=True)

        assert ratio == pytest.approx(1.0 / math.sqrt(2.0))

    def test_rejects_order_zero(self) -> None:
        """k must be at least 1."""
        from laghardy.errors import DomainError
        from laghardy.special import asymptotic_phi

        with pytest.raises(DomainError):
            asymptotic_phi(0.5, 0, 1.0)
