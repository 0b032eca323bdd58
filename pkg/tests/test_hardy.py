"""Unit tests for laghardy.hardy."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest


class TestMakeAtom:
    """Tests for atom construction."""

    def test_canonical_interval_atom(self) -> None:
        """The unseeded d=1 atom is +1/|B| on the left half and -1/|B| on the right."""
        from laghardy.hardy import make_atom

        atom = make_atom(1, 1.0, 0.5)

        assert atom.edges == ((0.5, 1.0, 1.5),)
        assert atom.levels == (Fraction(1), Fraction(-1))
        np.testing.assert_allclose(atom.values, [1.0, -1.0])
        assert atom.mean_is_zero()
        assert atom.support_in_ball()
        assert atom.l1_norm() == pytest.approx(1.0)

    def test_clipped_at_origin(self) -> None:
        """A ball reaching past 0 is cut to R_+ but keeps |B| = 2 rho."""
        from laghardy.hardy import make_atom

        atom = make_atom(1, 0.2, 0.5)

        assert atom.edges[0][0] == 0.0
        assert atom.ball_measure == pytest.approx(1.0)
        assert atom.support_in_ball()
        assert atom.mean_is_zero()

    @pytest.mark.parametrize("seed", [0, 1, 7, 42])
    def test_seeded_interval_atoms(self, seed: int) -> None:
        """Random atoms have zero mean, bounded levels and support in the ball."""
        from laghardy.hardy import make_atom

        atom = make_atom(1, 2.0, 0.3, seed=seed)

        assert atom.mean_is_zero()
        assert atom.sup_norm() <= 1.0 / atom.ball_measure + 1e-15
        assert atom.support_in_ball()
        assert 2 <= len(atom.levels) <= 8

    @pytest.mark.parametrize("seed", [None, 3])
    def test_disk_atom(self, seed: int | None) -> None:
        """d=2 atoms use inscribed cells of a 32 x 32 grid."""
        from laghardy.hardy import make_atom

        atom = make_atom(2, (2.0, 2.0), 1.0, seed=seed)

        assert atom.shape == (32, 32)
        assert atom.mean_is_zero()
        assert atom.support_in_ball()
        assert atom.sup_norm() <= 1.0 / math.pi + 1e-15

    def test_same_seed_same_atom(self) -> None:
        """Construction is deterministic in the seed."""
        from laghardy.hardy import make_atom

        assert make_atom(1, 1.5, 0.4, seed=11) == make_atom(1, 1.5, 0.4, seed=11)

    def test_dict_round_trip(self) -> None:
        """to_dict/from_dict restore the atom with exact levels."""
        from laghardy.hardy import Atom, make_atom

        atom = make_atom(1, 1.5, 0.4, seed=5)

        assert Atom.from_dict(atom.to_dict()) == atom

    def test_rejects_bad_radius(self) -> None:
        """Radius must be positive."""
        from laghardy.errors import ConstructionError
        from laghardy.hardy import make_atom

        with pytest.raises(ConstructionError):
            make_atom(1, 1.0, 0.0)

    def test_rejects_center_on_boundary(self) -> None:
        """The center must lie in the open orthant."""
        from laghardy.errors import ConstructionError
        from laghardy.hardy import make_atom

        with pytest.raises(ConstructionError):
            make_atom(2, (0.0, 1.0), 0.5)

    def test_rejects_dimension_three(self) -> None:
        """Only d = 1 and d = 2 are supported."""
        from laghardy.errors import DimensionError
        from laghardy.hardy import make_atom

        with pytest.raises(DimensionError):
            make_atom(3, (1.0, 1.0, 1.0), 0.5)

    def test_single_sign_is_not_an_atom(self) -> None:
        """Levels of one sign cannot have zero mean."""
        from laghardy.errors import ConstructionError
        from laghardy.hardy.atoms import _balanced_levels

        with pytest.raises(ConstructionError):
            _balanced_levels([1, 1, 0])

    def test_balanced_levels(self) -> None:
        """Three positive and one negative cell give levels 1/3 and -1."""
        from laghardy.hardy.atoms import _balanced_levels

        assert _balanced_levels([1, 1, -1, 1]) == [Fraction(1, 3), Fraction(1, 3), Fraction(-1), Fraction(1, 3)]


class TestAtomFamily:
    """Tests for seeded atom families."""

    def test_family_is_valid_and_reproducible(self) -> None:
        """Every atom has zero mean and the family depends only on the seed."""
        from laghardy.hardy import atom_family

        family = atom_family(count=4, seed=0)

        assert [a.d for a in family] == [1, 1, 2, 2]
        assert all(a.mean_is_zero() and a.support_in_ball() for a in family)
        assert family == atom_family(count=4, seed=0)
        assert family[0].ball_measure == pytest.approx(1e-4)
        assert family[1].ball_measure == pytest.approx(10.0)

    def test_radius_for_measure(self) -> None:
        """|B| = 2 rho in d=1 and pi rho^2 in d=2."""
        from laghardy.hardy import radius_for_measure

        assert radius_for_measure(1, 3.0) == 1.5
        assert radius_for_measure(2, math.pi) == pytest.approx(1.0)


class TestHardySum:
    """Tests for shell-ordered Hardy sums."""

    def test_single_coefficient(self) -> None:
        """f = 2 phi_3 gives S = 2 / 4^beta."""
        from laghardy.hardy import hardy_sum
        from laghardy.quadrature import phi_target

        report = hardy_sum(phi_target(0.5, {3: 2.0}), 0.5, beta=1.0, nmax=10)

        assert report.value == pytest.approx(0.5, abs=1e-8)
        assert report.partial_sums[2] == pytest.approx(0.0, abs=1e-8)
        assert report.cauchy_tail == pytest.approx(0.0, abs=1e-8)

    def test_report_derived_fields(self) -> None:
        """Last shell, Cauchy tail and dyadic differences are read off the partial sums."""
        from laghardy.hardy import HardySumReport

        S = np.arange(9.0) + 1.0
        report = HardySumReport(beta=1.0, d=1, nmax=8, shell_sums=np.ones(9), partial_sums=S)

        assert report.value == 9.0
        assert report.last_shell == 1.0
        assert report.cauchy_tail == 4.0
        assert report.dyadic_differences == [(1, 1.0), (2, 2.0), (4, 4.0)]
        assert report.fit is None
        assert [r["N"] for r in report.records()] == [1, 2, 4, 8]

    def test_atom_sum_is_finite(self) -> None:
        """An atom's Hardy sum with beta = 1 settles."""
        from laghardy.hardy import hardy_sum, make_atom

        report = hardy_sum(make_atom(1, 1.0, 0.5), 0.5, beta=1.0, nmax=200)

        assert math.isfinite(report.value)
        assert report.value > 0.0
        assert abs(report.cauchy_tail) < report.value

    def test_weaker_norm_is_smaller(self) -> None:
        """With the same coefficients, beta = d never exceeds beta = 3d/4."""
        from laghardy.hardy import hardy_sum, make_atom
        from laghardy.quadrature import coefficients_up_to

        atom = make_atom(1, 1.0, 0.5)
        table = coefficients_up_to(atom.to_target(), [0.5], 400, estimate_error=False)
        critical = hardy_sum(table, [0.5], 0.75, 400)
        weaker = hardy_sum(table, [0.5], 1.0, 400)

        assert 0.0 < weaker.value <= critical.value
        assert np.all(weaker.partial_sums <= critical.partial_sums + 1e-15)

    def test_rejects_nonpositive_beta(self) -> None:
        """beta must be positive."""
        from laghardy.errors import DomainError
        from laghardy.hardy import hardy_sum
        from laghardy.quadrature import phi_target

        with pytest.raises(DomainError):
            hardy_sum(phi_target(0.5, {0: 1.0}), 0.5, beta=0.0, nmax=5)

    def test_table_too_small(self) -> None:
        """A precomputed table cannot be read beyond its Nmax."""
        from laghardy.errors import DomainError
        from laghardy.hardy import hardy_sum
        from laghardy.quadrature import coefficients_up_to, phi_target

        table = coefficients_up_to(phi_target(0.5, {0: 1.0}), 0.5, 5, estimate_error=False)

        with pytest.raises(DomainError):
            hardy_sum(table, 0.5, beta=1.0, nmax=6)

    def test_coefficient_size_ratio(self) -> None:
        """The coefficient bound constant is finite and positive for an atom."""
        from laghardy.hardy import coefficient_size_ratio, make_atom
        from laghardy.quadrature import coefficients_up_to

        atom = make_atom(1, 1.0, 0.5)
        table = coefficients_up_to(atom.to_target(), 0.5, 50, estimate_error=False)

        assert 0.0 < coefficient_size_ratio(table, atom.l1_norm()) < math.inf


class TestBetaIdentity:
    """Tests for the r-integral of r^(2n) (1-r)^((3d-4)/4)."""

    @pytest.mark.parametrize("n, d", [(0, 1), (10, 1), (50, 1), (200, 1), (10, 2), (50, 2)])
    def test_matches_beta_function(self, n: int, d: int) -> None:
        """Gauss-Jacobi gives B(2n+1, 3d/4)."""
        from laghardy.hardy import beta_identity_check, beta_reference

        integral, _ = beta_identity_check(n, d)

        assert integral == pytest.approx(beta_reference(n, d), rel=1e-9)

    @pytest.mark.parametrize("n", [10, 50, 200])
    def test_scaled_value_near_asymptote(self, n: int) -> None:
        """I (n+1)^(3/4) stays within a factor 3 of Gamma(3/4) 2^(-3/4)."""
        from laghardy.hardy import beta_asymptote, beta_identity_check

        _, scaled = beta_identity_check(n, 1)
        limit = beta_asymptote(1)

        assert limit / 3.0 <= scaled <= 3.0 * limit
        assert limit == pytest.approx(math.gamma(0.75) * 2.0**-0.75)

    def test_converges_to_asymptote(self) -> None:
        """At n = 200 the scaled integral is within 1% of the limit."""
        from laghardy.hardy import beta_asymptote, beta_identity_check

        assert beta_identity_check(200, 1)[1] == pytest.approx(beta_asymptote(1), rel=1e-2)

    def test_rejects_negative_n(self) -> None:
        """|n| is a nonnegative integer."""
        from laghardy.errors import DomainError
        from laghardy.hardy import beta_identity_check

        with pytest.raises(DomainError):
            beta_identity_check(-1, 1)


class TestAtomIntegral:
    """Tests for the r-integral of ||R_r a||_2 (1-r)^((d-4)/4)."""

    def test_substitution_keeps_gap(self) -> None:
        """r(s) = 1 - s^(4/d) carries its gap exactly."""
        from laghardy.hardy.sums import _r_of_s

        p = _r_of_s(0.1, 1)

        assert p.gap == pytest.approx(1e-4)
        assert p.r + p.gap == pytest.approx(1.0)

    def test_stable_under_refinement(self) -> None:
        """A d=1 atom with |B| = 2 gives a finite value that moves by less than 1e-3 when refined."""
        from laghardy.hardy import atom_r_integral_checked, make_atom

        atom = make_atom(1, 2.0, 1.0)
        result = atom_r_integral_checked(atom, 0.5, npts=40)

        assert 0.0 < result.value <= 4.0 * atom.l2_norm()
        assert result.relative_change < 1e-3
        assert result.record()["measure"] == pytest.approx(2.0)

    def test_rejects_non_hermite_alpha(self) -> None:
        """alpha = 0 is outside the supported class."""
        from laghardy.errors import RangeError
        from laghardy.hardy import atom_r_integral, make_atom

        with pytest.raises(RangeError):
            atom_r_integral(make_atom(1, 1.0, 0.5), 0.0, npts=4)


class TestUniformPhiSum:
    """Tests for sums of |phi_k(u)| / k^(3/4 + eps)."""

    def test_scan_shapes_and_ordering(self) -> None:
        """Totals dominate the half sums and the part from N_u."""
        from laghardy.hardy import uniform_phi_sum_scan

        u = np.linspace(0.5, 10.0, 20)
        scan = uniform_phi_sum_scan(0.5, 0.25, u, K=64)

        assert scan.totals.shape == (20,)
        assert np.all(scan.totals >= scan.half_totals)
        assert np.all(scan.in_set <= scan.totals * (1.0 + 1e-12))
        assert scan.dyadic_totals.shape == (scan.dyadic_K.size, 20)
        np.testing.assert_allclose(scan.dyadic_totals[-1], scan.totals, rtol=1e-14)
        assert len(scan.records()) == 20
        assert scan.summary()["grid_max"] == scan.grid_max

    def test_n_u_mask(self) -> None:
        """With alpha = 1/2, k = 0 belongs to N_u exactly for u^2 in [3/2, 9/2]."""
        from laghardy.hardy import n_u_mask

        mask = n_u_mask(0.5, np.zeros(3), np.array([1.0, 1.5, 3.0]))

        assert mask.tolist() == [False, True, False]

    def test_rejects_small_K(self) -> None:
        """K must be at least 2."""
        from laghardy.errors import DomainError
        from laghardy.hardy import uniform_phi_sum_scan

        with pytest.raises(DomainError):
            uniform_phi_sum_scan(0.5, 0.25, [1.0], K=1)

    def test_rejects_K_beyond_cap(self) -> None:
        """K above series_term_cap raises BudgetError."""
        from laghardy.errors import BudgetError
        from laghardy.hardy import uniform_phi_sum_scan

        with pytest.raises(BudgetError):
            uniform_phi_sum_scan(0.5, 0.25, [1.0], K=10**6)

    def test_rejects_unbounded_alpha(self) -> None:
        """alpha < -1/2 is refused."""
        from laghardy.errors import RangeError
        from laghardy.hardy import uniform_phi_sum_scan

        with pytest.raises(RangeError):
            uniform_phi_sum_scan(-0.75, 0.25, [1.0], K=8)
