"""Unit tests for laghardy.suites."""
from __future__ import annotations

import math

import pytest


class TestEvaluate:
    """Tests for the eval tabulation."""

    def test_rows_for_phi_and_kernel(self) -> None:
        """Orders times points give phi rows; r and y add kernel rows at u > 0."""
        from laghardy.reports import RunConfig
        from laghardy.suites import evaluate

        config = RunConfig(command="eval", alpha=[0.5], k=[0, 1], u=[0.0, 1.0], r=[0.5], y=[1.0])
        report = evaluate(config)

        phi = [row for row in report.records if row["quantity"] == "phi"]
        kernel = [row for row in report.records if row["quantity"] == "kernel"]
        assert len(phi) == 4
        assert len(kernel) == 1
        assert report.summary == {"rows": 5}

        first = phi[1]
        assert first["k"] == 0 and first["u"] == 1.0
        assert first["value"] == pytest.approx(math.sqrt(2.0 / math.gamma(1.5)) * math.exp(-0.5), rel=1e-12)
        assert first["regime"] == "flat"
        assert phi[0]["limit"] is True
        assert phi[0]["value"] == 0.0

    def test_boundary_limit_for_minus_half(self) -> None:
        """alpha = -1/2 has a finite nonzero limit at 0."""
        from laghardy.reports import RunConfig
        from laghardy.suites import evaluate

        report = evaluate(RunConfig(command="eval", alpha=[-0.5], k=[0], u=[0.0]))

        assert report.records[0]["value"] == pytest.approx(math.sqrt(2.0 / math.sqrt(math.pi)), rel=1e-12)

    def test_unbounded_boundary_is_config_error(self) -> None:
        """alpha < -1/2 cannot be tabulated at u = 0."""
        from laghardy.errors import ConfigError
        from laghardy.reports import RunConfig
        from laghardy.suites import evaluate

        with pytest.raises(ConfigError):
            evaluate(RunConfig(command="eval", alpha=[-0.75], k=[0], u=[0.0]))

    def test_derivative_only_for_hermite_class(self) -> None:
        """alpha = 0 rows carry no derivative."""
        from laghardy.reports import RunConfig
        from laghardy.suites import evaluate

        report = evaluate(RunConfig(command="eval", alpha=[0.0], k=[2], u=[1.5]))

        assert report.records[0]["derivative"] is None


class TestSuiteRun:
    """Tests for assertion bookkeeping."""

    def test_budget_fails_only_its_assertion(self) -> None:
        """A BudgetError marks one assertion and gives exit code 3."""
        from laghardy.errors import BudgetError
        from laghardy.reports import RunConfig
        from laghardy.suites import SuiteRun

        state = SuiteRun(RunConfig(command="verify", suite="trig-series"))

        def exhausted():
            raise BudgetError("cap")

        assert state.check("ok", "holds", lambda: (True, "fine"))
        assert not state.check("capped", "holds", exhausted)
        report = state.report()

        assert [a.passed for a in report.assertions] == [True, False]
        assert report.assertions[1].budget
        assert report.exit_code() == 3
        assert "wall_clock_s" in report.timing

    def test_failure_gives_exit_code_one(self) -> None:
        """A failed check without budget trouble exits with 1."""
        from laghardy.reports import RunConfig
        from laghardy.suites import SuiteRun

        state = SuiteRun(RunConfig(command="verify", suite="trig-series"))
        state.check("no", "holds", lambda: (False, "broken"))

        assert state.report().exit_code() == 1

    def test_every_suite_is_registered(self) -> None:
        """Each suite name resolves to a runner."""
        from laghardy.reports import SUITES
        from laghardy.suites import SUITE_REGISTRY

        assert set(SUITE_REGISTRY) == set(SUITES)


class TestSuites:
    """Small-configuration runs of the acceptance suites."""

    def test_orthonormality(self) -> None:
        """A 10 x 10 Gram matrix passes at alpha = 1/2."""
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        report = run_suite(RunConfig(command="verify", suite="orthonormality", alpha=[0.5], nmax=10))

        assert report.passed
        assert report.summary["nmax"] == 10

    def test_kernel_equality(self) -> None:
        """Closed form equals the series on a small grid."""
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        report = run_suite(
            RunConfig(command="verify", suite="kernel-equality", alpha=[0.5], r=[0.5], u=[0.3, 1.0, 2.5])
        )

        assert report.passed
        assert report.summary["max_scaled_error"] < 1e-8

    def test_kernel_equality_refuses_large_r(self) -> None:
        """r above the series limit is a configuration error."""
        from laghardy.errors import ConfigError
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        with pytest.raises(ConfigError):
            run_suite(RunConfig(command="verify", suite="kernel-equality", r=[0.995]))

    def test_norm_scaling(self) -> None:
        """All three norm families stay within a factor 10 after rescaling."""
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        report = run_suite(
            RunConfig(command="verify", suite="norm-scaling", alpha=[0.5], r=[0.9, 0.99], u=[0.5, 1.0, 2.0])
        )

        assert [a.name for a in report.assertions] == [
            "norm-scaling[kernel]",
            "norm-scaling[dx]",
            "norm-scaling[dx_product]",
        ]
        assert report.passed
        assert report.plot == {"x": "r", "y": "rescaled"}

    def test_norm_scaling_derivative_needs_hermite_class(self) -> None:
        """p = 3/4 with alpha = 0 is refused."""
        from laghardy.errors import ConfigError
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        with pytest.raises(ConfigError):
            run_suite(RunConfig(command="verify", suite="norm-scaling", alpha=[0.0], p=0.75))

    def test_norm_scaling_rejects_unlisted_exponent(self) -> None:
        """p = 1/2 names no norm family and is refused on the p field."""
        from laghardy.errors import ConfigError
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        with pytest.raises(ConfigError) as excinfo:
            run_suite(RunConfig(command="verify", suite="norm-scaling", alpha=[0.5], p=0.5))

        assert excinfo.value.field == "p"

    def test_norm_scaling_single_exponent(self) -> None:
        """p = 1/4 runs the kernel family only."""
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        report = run_suite(
            RunConfig(command="verify", suite="norm-scaling", alpha=[0.5], p=0.25, r=[0.9, 0.99], u=[0.5, 1.0, 2.0])
        )

        assert [a.name for a in report.assertions] == ["norm-scaling[kernel]"]
        assert {row["kind"] for row in report.records} == {"kernel"}

    def test_l1_uniform(self) -> None:
        """The eps = 1/4 sums have small tails and eps = 0 does not."""
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        report = run_suite(RunConfig(command="verify", suite="l1-uniform", alpha=[0.5], u=[1.0, 5.0]))

        assert report.passed
        assert report.summary["contrast"]["eps0_tail"] > report.summary["contrast"]["eps_tail"]

    @pytest.mark.slow
    def test_trig_series(self) -> None:
        """The default trig-series suite passes at t = 1."""
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        report = run_suite(RunConfig(command="verify", suite="trig-series"))

        assert report.passed
        assert report.summary["naive_gap"] < 1e-2

    @pytest.mark.slow
    def test_sharpness_reports_every_check(self) -> None:
        """A reduced sharpness run carries every assertion and the plot axes."""
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        report = run_suite(RunConfig(command="verify", suite="sharpness", nmax=2000))

        names = [a.name for a in report.assertions]
        assert names[:2] == ["sharpness[beta=3/4]", "sharpness[beta=0.85]"]
        assert "cos-squared" in names
        assert report.plot == {"x": "log_N", "y": "S"}
        assert {a.name: a.passed for a in report.assertions}["inner-series[d=1]"]


class TestFamilyBound:
    """Tests for the max/min bound over an atom family."""

    def test_within_limit(self) -> None:
        """Values within a factor 10 pass and report their ratio."""
        from laghardy.suites import family_bound

        assert family_bound([1.0, 2.5, 4.0]) == (True, pytest.approx(4.0))

    def test_beyond_limit(self) -> None:
        """A spread of 20 fails."""
        from laghardy.suites import family_bound

        ok, ratio = family_bound([0.5, 10.0])

        assert not ok
        assert ratio == pytest.approx(20.0)

    @pytest.mark.parametrize("values", [[], [1.0, 0.0], [1.0, math.inf], [1.0, math.nan]])
    def test_degenerate_families_fail(self, values: list) -> None:
        """Empty, zero or non-finite values never pass."""
        from laghardy.suites import family_bound

        assert family_bound(values) == (False, math.inf)


class TestAtomSuites:
    """Atom-family suites on a family of one or two d=1 atoms."""

    @pytest.mark.slow
    def test_atom_integral(self) -> None:
        """The canonical interval atom integrates below 4 ||a||_2 and is mesh-stable."""
        from unittest.mock import patch

        from laghardy.hardy import make_atom
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        with patch("laghardy.suites._family", return_value=[make_atom(1, 1.0, 0.5)]):
            report = run_suite(RunConfig(command="verify", suite="atom-integral", alpha=[0.5]))

        assert [a.name for a in report.assertions] == ["atom-integral[d=1, |B|=1]", "atom-integral[family]"]
        assert report.passed
        assert report.records[0]["bound"] == pytest.approx(4.0)
        assert report.summary["family_ratio"] == pytest.approx(1.0)

    def test_atom_integral_needs_hermite_class(self) -> None:
        """alpha = 0 is refused before any atom is built."""
        from laghardy.errors import ConfigError
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        with pytest.raises(ConfigError):
            run_suite(RunConfig(command="verify", suite="atom-integral", alpha=[0.0]))

    @pytest.mark.slow
    def test_hardy_atoms(self) -> None:
        """Each atom gets a check, the family gets a bound and the beta = d sums stay below beta = 3d/4."""
        from unittest.mock import patch

        from laghardy.hardy import make_atom
        from laghardy.reports import RunConfig
        from laghardy.suites import run_suite

        atoms = [make_atom(1, 1.0, 0.5), make_atom(1, 2.0, 0.25)]
        with patch("laghardy.suites._family", return_value=atoms):
            report = run_suite(RunConfig(command="verify", suite="hardy-atoms", alpha=[0.5], nmax=400))

        names = [a.name for a in report.assertions]
        assert names[:3] == ["hardy-atoms[d=1, |B|=1]", "hardy-atoms[d=1, |B|=0.5]", "hardy-atoms[family]"]
        assert all(a.passed for a in report.assertions if a.name.startswith("beta-identity"))
        sums = [row for row in report.records if "value" in row]
        assert len(sums) == 2
        assert all(row["weaker"] <= row["value"] for row in sums)
        values = [row["value"] for row in sums]
        assert report.summary["family_max"] == pytest.approx(max(values))
        assert report.summary["family_ratio"] == pytest.approx(max(values) / min(values))
