"""Unit tests for laghardy.kernel.norms, laghardy.kernel.gram and laghardy.kernel.operator."""
from __future__ import annotations

import math

import numpy as np
import pytest


class TestKernelNorms:
    """Tests for L2 norms of R_r(x, .)."""

    @pytest.mark.parametrize("alpha, r, x", [(0.5, 0.5, 1.0), (-0.5, 0.9, 0.4), (2.0, 0.99, 2.5)])
    def test_norm_matches_parseval(self, alpha: float, r: float, x: float) -> None:
        """Quadrature of |R_r(x, .)|^2 equals sum_k r^(2k) phi_k(x)^2."""
        from laghardy.kernel import l2_norm_kernel, parseval_bound

        assert l2_norm_kernel(alpha, r, x) == pytest.approx(parseval_bound(alpha, r, x), rel=1e-7)

    def test_derivative_norm_matches_parseval(self) -> None:
        """||d/dx R_r(x, .)||^2 equals sum_k r^(2k) phi_k'(x)^2."""
        from laghardy.kernel import l2_norm_kernel_dx
        from laghardy.special import hermite_laguerre_dx_sweep

        r, x = 0.5, 1.2
        dphi = hermite_laguerre_dx_sweep(0.5, x, 80)
        expected = math.sqrt(math.fsum((r ** (2 * k)) * float(dphi[k]) ** 2 for k in range(81)))

        assert l2_norm_kernel_dx(0.5, r, x) == pytest.approx(expected, rel=1e-7)

    def test_sup_parseval_dominates(self) -> None:
        """The sup-based bound exceeds the pointwise norm."""
        from laghardy.kernel import l2_norm_kernel, sup_parseval_bound

        assert sup_parseval_bound(0.5, 0.9) >= l2_norm_kernel(0.5, 0.9, 1.0) * 0.99

    def test_rejects_nonpositive_x(self) -> None:
        """x must be positive."""
        from laghardy.errors import DomainError
        from laghardy.kernel import l2_norm_kernel

        with pytest.raises(DomainError):
            l2_norm_kernel(0.5, 0.5, 0.0)

    def test_derivative_gated(self) -> None:
        """Derivative norms need a Hermite-class alpha."""
        from laghardy.errors import RangeError
        from laghardy.kernel import l2_norm_kernel_dx

        with pytest.raises(RangeError):
            l2_norm_kernel_dx(0.0, 0.5, 1.0)


class TestNormScalingScan:
    """Tests for the (1-r)^p rescaling scan."""

    def test_kernel_scaling_is_bounded(self) -> None:
        """sup_x ||R_r(x, .)|| (1-r)^(1/4) varies by less than a factor 10."""
        from laghardy.kernel import norm_scaling_scan

        report = norm_scaling_scan(0.5, [0.9, 0.99], kind="kernel", x_grid=[0.5, 1.0, 2.0, 4.0])

        assert report.p == 0.25
        assert len(report.records()) == 2
        assert report.ratio <= 10.0
        assert report.sup_norms[1] > report.sup_norms[0]

    def test_derivative_scaling_is_bounded(self) -> None:
        """With p = 3/4 the derivative norms stay within a factor 10."""
        from laghardy.kernel import norm_scaling_scan

        report = norm_scaling_scan(-0.5, [0.9, 0.99], kind="dx", x_grid=[0.5, 1.0, 2.0])

        assert report.p == 0.75
        assert report.ratio <= 10.0

    def test_records_keys(self) -> None:
        """Records carry r, the sup, its location and the rescaled value."""
        from laghardy.kernel import NormScanReport

        report = NormScanReport(alpha=0.5, kind="kernel", p=0.25, r_values=[0.9], sup_norms=[2.0], argmax_x=[1.0])

        (record,) = report.records()

        assert record["r"] == 0.9
        assert record["argmax_x"] == 1.0
        assert record["rescaled"] == pytest.approx(2.0 * 0.1**0.25)
        assert report.summary()["ratio"] == 1.0

    def test_unknown_kind(self) -> None:
        """Only kernel, dx and dx_product are scanned."""
        from laghardy.errors import DomainError
        from laghardy.kernel import norm_scaling_scan

        with pytest.raises(DomainError):
            norm_scaling_scan(0.5, [0.9], kind="hessian")


class TestIntervalGram:
    """Tests for Gram matrices of the kernel over cells."""

    @pytest.mark.parametrize("r", [0.5, 0.9, 0.99])
    def test_smoothed_norm_matches_spectral(self, r: float) -> None:
        """||R_r a||^2 from the Gram matrix equals sum_k r^(2k) c_k^2."""
        from laghardy.kernel import smoothed_norm_sq, spectral_norm_sq

        edges = np.array([0.5, 1.5, 2.5])
        values = np.array([1.0, -1.0])
        nmax = 2000 if r == 0.99 else 400

        gram = smoothed_norm_sq((0.5,), r, (edges,), values)
        spectral = spectral_norm_sq(0.5, r, edges, values, nmax)

        assert gram == pytest.approx(spectral, rel=1e-6)

    def test_direct_and_corner_agree(self) -> None:
        """Both assembly paths give the same matrix where both are accurate."""
        from laghardy.kernel import SmoothingParam
        from laghardy.kernel.gram import corner_gram, direct_gram

        rho = SmoothingParam.of(0.9)
        edges = np.array([0.25, 1.0, 1.75, 2.5])
        direct = direct_gram(0.5, rho, edges)

        np.testing.assert_allclose(corner_gram(0.5, rho, edges), direct, atol=1e-6 * np.abs(direct).max())

    def test_symmetric(self) -> None:
        """The Gram matrix is symmetric."""
        from laghardy.kernel import interval_gram

        K = interval_gram(1.5, 0.99, np.array([0.0, 0.7, 1.9, 3.0]))

        np.testing.assert_allclose(K, K.T, atol=1e-14)

    def test_two_dimensional_product(self) -> None:
        """A tensor step function factorizes into the product of 1-D norms."""
        from laghardy.kernel import smoothed_norm_sq

        edges = np.array([0.5, 1.5, 2.5])
        v = np.array([1.0, -1.0])
        one = smoothed_norm_sq((0.5,), 0.9, (edges,), v)
        two = smoothed_norm_sq((0.5, 0.5), 0.9, (edges, edges), np.outer(v, v))

        assert two == pytest.approx(one * one, rel=1e-12)

    def test_rejects_bad_edges(self) -> None:
        """Edges must be increasing and nonnegative."""
        from laghardy.errors import DomainError
        from laghardy.kernel import interval_gram

        with pytest.raises(DomainError):
            interval_gram(0.5, 0.5, np.array([1.0, 0.5]))


class TestOperator:
    """Tests for R_r applied to functions."""

    def test_kernel_and_spectral_paths_agree(self) -> None:
        """For a step atom at r = 0.9 both evaluations agree to 1e-5."""
        from laghardy.kernel import apply_operator
        from laghardy.quadrature import CellProfile, TargetFunction

        profile = CellProfile(edges=(np.array([0.5, 1.5, 2.5]),), values=np.array([0.5, -0.5]))
        f = TargetFunction(func=profile, upper=(2.5,), cells=profile, label="atom")

        for x in (0.8, 1.5, 2.2):
            kernel = apply_operator(0.5, 0.9, f, x, method="kernel")
            spectral = apply_operator(0.5, 0.9, f, x, method="spectral", nmax=200)
            assert kernel == pytest.approx(spectral, abs=1e-5)

    def test_eigenfunction(self) -> None:
        """R_r phi_m = r^m phi_m."""
        from laghardy.kernel import apply_operator
        from laghardy.quadrature import phi_target
        from laghardy.special import hermite_laguerre_fn

        f = phi_target(0.5, {4: 1.0})

        assert apply_operator(0.5, 0.7, f, 1.3) == pytest.approx(0.7**4 * hermite_laguerre_fn(0.5, 4, 1.3), rel=1e-8)

    def test_semigroup(self) -> None:
        """R_s R_r = R_(rs) on phi_m."""
        from laghardy.kernel import semigroup_defect

        assert semigroup_defect(0.5, 0.5, 0.6, 2, [0.5, 1.0, 2.0]) < 1e-8

    def test_contraction(self) -> None:
        """||R_r phi_3|| / ||phi_3|| = r^3."""
        from laghardy.kernel import contraction_ratio
        from laghardy.quadrature import phi_target

        assert contraction_ratio(0.5, 0.9, phi_target(0.5, {3: 1.0}), nmax=40) == pytest.approx(0.9**3, rel=1e-8)

    def test_unknown_method(self) -> None:
        """Only kernel and spectral methods exist."""
        from laghardy.errors import DomainError
        from laghardy.kernel import apply_operator
        from laghardy.quadrature import phi_target

        with pytest.raises(DomainError):
            apply_operator(0.5, 0.5, phi_target(0.5, {0: 1.0}), 1.0, method="fourier")
