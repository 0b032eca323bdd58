"""Unit tests for laghardy.special.bessel."""
from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from scipy.special import ive


class TestScaledBessel:
    """Tests for e^(-z) I_a(z) and its logarithm."""

    def test_half_order_closed_form(self) -> None:
        """I_(1/2)(z) = (2/(pi z))^(1/2) sinh z."""
        from laghardy.special import bessel_i_scaled

        expected = math.exp(-1.0) * math.sqrt(2.0 / math.pi) * math.sinh(1.0)

        assert bessel_i_scaled(0.5, 1.0) == pytest.approx(expected, rel=1e-13)
        assert expected == pytest.approx(0.3450, abs=1e-4)

    def test_minus_half_order_closed_form(self) -> None:
        """I_(-1/2)(z) = (2/(pi z))^(1/2) cosh z."""
        from laghardy.special import bessel_i_scaled

        expected = math.exp(-1.0) * math.sqrt(2.0 / math.pi) * math.cosh(1.0)

        assert bessel_i_scaled(-0.5, 1.0) == pytest.approx(expected, rel=1e-13)

    def test_series_and_asymptotic_agree_at_crossover(self) -> None:
        """Both branches give the same value on either side of the crossover."""
        from laghardy.special import log_bessel_i_scaled

        z = np.array([19.999, 20.0, 20.001])
        series = log_bessel_i_scaled(2.5, z, crossover=1e9)
        scipy_branch = log_bessel_i_scaled(2.5, z, crossover=0.0)

        np.testing.assert_allclose(series, scipy_branch, rtol=1e-12)

    def test_large_argument_does_not_overflow(self) -> None:
        """log I_a(1e4) is finite although I_a(1e4) overflows."""
        from laghardy.special import log_bessel_i

        value = log_bessel_i(1.0, 1e4)

        assert math.isfinite(value)
        assert value == pytest.approx(1e4 + math.log(ive(1.0, 1e4)), rel=1e-14)

    def test_matches_mpmath(self) -> None:
        """Small and moderate arguments agree with mpmath."""
        from laghardy.special import log_bessel_i

        for alpha, z in ((0.0, 0.3), (3.7, 8.0), (-0.3, 2.0)):
            assert log_bessel_i(alpha, z) == pytest.approx(float(mpmath.log(mpmath.besseli(alpha, z))), rel=1e-12)

    def test_zero_argument(self) -> None:
        """I_0(0) = 1, I_a(0) = 0 for a > 0."""
        from laghardy.special import log_bessel_i

        assert log_bessel_i(0.0, 0.0) == 0.0
        assert log_bessel_i(1.0, 0.0) == -math.inf

    def test_rejects_negative_argument(self) -> None:
        """z < 0 is outside the domain."""
        from laghardy.errors import DomainError
        from laghardy.special import log_bessel_i

        with pytest.raises(DomainError):
            log_bessel_i(0.5, -1.0)


class TestBesselRatio:
    """Tests for I_(a-1)/I_a."""

    def test_half_order(self) -> None:
        """I_(-1/2)/I_(1/2) = coth z."""
        from laghardy.special import bessel_ratio

        assert bessel_ratio(0.5, 1.0) == pytest.approx(1.0 / math.tanh(1.0), rel=1e-13)
        assert bessel_ratio(0.5, 1.0) == pytest.approx(1.3130, abs=1e-4)

    def test_half_order_large_argument(self) -> None:
        """coth 10 = 1.0000000041..., resolved through the excess."""
        from laghardy.special import bessel_ratio_excess

        assert bessel_ratio_excess(0.5, 10.0) == pytest.approx(1.0 / math.tanh(10.0) - 1.0, rel=1e-6)

    def test_asymptotic_branch(self) -> None:
        """Beyond the Hankel threshold the excess still matches mpmath."""
        from laghardy.special import bessel_ratio_excess

        z = 200.0
        with mpmath.workdps(40):
            oracle = float(mpmath.besseli(0.5, z) / mpmath.besseli(1.5, z) - 1)

        assert bessel_ratio_excess(1.5, z) == pytest.approx(oracle, rel=1e-10)

    def test_bounded_excess(self) -> None:
        """(a=3, z=2): |ratio - 1| <= 2a/z = 3."""
        from laghardy.special import bessel_ratio

        value = bessel_ratio(3.0, 2.0)

        assert abs(value - 1.0) <= 3.0
        with mpmath.workdps(30):
            assert value == pytest.approx(float(mpmath.besseli(2, 2) / mpmath.besseli(3, 2)), rel=1e-12)

    def test_rejects_small_alpha(self) -> None:
        """The ratio is only provided for a >= 1/2."""
        from laghardy.errors import RangeError
        from laghardy.special import bessel_ratio

        with pytest.raises(RangeError):
            bessel_ratio(0.25, 1.0)
