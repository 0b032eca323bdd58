"""Tabulation for ``eval`` and the acceptance suites behind ``verify``.

Every suite returns a ScanReport whose assertions say which property held.
A budget cap hit inside one assertion fails that assertion only.
"""
from __future__ import annotations

import logging
import math
import time
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from .config import get_settings
from .errors import BudgetError, ConfigError, RangeError
from .hardy import (
    atom_family,
    atom_r_integral_checked,
    beta_asymptote,
    beta_identity_check,
    beta_reference,
    coefficient_size_ratio,
    hardy_sum,
    uniform_phi_sum_scan,
)
from .kernel import kernel_closed, kernel_series, norm_scaling_scan
from .quadrature import coefficients_up_to, gram_matrix
from .reports import Assertion, RunConfig, ScanReport
from .sharpness import (
    cauchy_differences,
    cos_squared_decomposition_check,
    divergence_demo,
    envelope_series_check,
    inner_decay_scan,
    trig_series_accelerated,
)
from .special import boundary_value, envelope, hermite_laguerre_dx_sweep, hermite_laguerre_sweep, sup_norm_scan
from .types import is_hermite_class

logger = logging.getLogger(__name__)

Check = Callable[[], Tuple[bool, str]]


class SuiteRun:
    """Collects records, summary values and assertions for one report."""

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.records: List[Dict] = []
        self.summary: Dict = {}
        self.assertions: List[Assertion] = []
        self.plot = None
        self.started = time.perf_counter()

    def check(self, name: str, claim: str, test: Check) -> bool:
        try:
            passed, detail = test()
        except BudgetError as exc:
            logger.warning("Budget exhausted in %s: %s", name, exc)
            self.assertions.append(Assertion(name=name, passed=False, claim=claim, detail=f"budget: {exc}", budget=True))
            return False
        if not passed:
            logger.warning("Assertion %s failed (%s): %s", name, claim, detail)
        self.assertions.append(Assertion(name=name, passed=bool(passed), claim=claim, detail=detail))
        return bool(passed)

    def report(self) -> ScanReport:
        return ScanReport(
            command=self.config.command,
            config=self.config.to_dict(),
            records=self.records,
            summary=self.summary,
            assertions=self.assertions,
            plot=self.plot,
        ).stamp(self.started)


SUITE_REGISTRY: Dict[str, Callable[[RunConfig], ScanReport]] = {}


def suite(name: str):
    def register(fn: Callable[[SuiteRun], None]) -> Callable[[RunConfig], ScanReport]:
        def run(config: RunConfig) -> ScanReport:
            logger.info("Running suite %s", name)
            state = SuiteRun(config)
            fn(state)
            return state.report()

        run.__doc__ = fn.__doc__
        SUITE_REGISTRY[name] = run
        return run

    return register


def run_suite(config: RunConfig) -> ScanReport:
    config.validate()
    return SUITE_REGISTRY[config.suite](config)


def evaluate(config: RunConfig) -> ScanReport:
    """Tabulate phi_k^a, its derivative and envelope on the u grid, and R_r(u, y) when r and y are given."""
    config.validate()
    state = SuiteRun(config)
    eps = get_settings().boundary_eps
    alphas = config.alpha or [0.5]
    orders = config.k or [0]
    grid = np.asarray(config.u or [1.0], dtype=float)
    kmax = max(orders)
    for a in alphas:
        inside = grid > eps
        phi = hermite_laguerre_sweep(a, grid[inside], kmax) if np.any(inside) else None
        dphi = hermite_laguerre_dx_sweep(a, grid[inside], kmax) if phi is not None and is_hermite_class(a) else None
        for k in orders:
            j = 0
            for u, live in zip(grid, inside):
                row = {"quantity": "phi", "alpha": a, "k": k, "u": float(u), "limit": not live}
                if live:
                    row["value"] = float(phi[k][j])
                    row["derivative"] = float(dphi[k][j]) if dphi is not None else None
                    if a >= -0.5:
                        env = envelope(a, k, float(u))
                        row["envelope"], row["regime"] = env.bound, env.regime
                    j += 1
                else:
                    try:
                        row["value"] = boundary_value(a, k, "hermite")
                    except RangeError as exc:
                        raise ConfigError("u", f"u={u} is inside the boundary zone and {exc}") from exc
                state.records.append(row)
        for r in config.r:
            for u in grid[grid > 0.0]:
                for y in config.y:
                    if y > 0.0:
                        value = kernel_closed(a, r, float(u), float(y))
                        state.records.append({"quantity": "kernel", "alpha": a, "r": r, "u": float(u), "y": y, "value": value})
    state.summary = {"rows": len(state.records)}
    return state.report()


def _alpha_default(config: RunConfig, default: Sequence[float]) -> List[float]:
    return list(config.alpha) if config.alpha else list(default)


@suite("orthonormality")
def orthonormality(state: SuiteRun) -> None:
    """|<phi_n, phi_m> - delta_nm| below tolerance for all n, m <= nmax."""
    cfg = state.config
    nmax = 40 if cfg.nmax is None else cfg.nmax
    tol = cfg.tol or 1e-8
    for a in _alpha_default(cfg, [-0.5, 0.5, 1.0, 2.5]):

        def test(a: float = a) -> Tuple[bool, str]:
            G = gram_matrix(a, nmax)
            dev = float(np.max(np.abs(G - np.eye(nmax + 1))))
            state.records.append({"alpha": a, "nmax": nmax, "max_deviation": dev})
            return dev < tol, f"max deviation {dev:.3e} at alpha={a}"

        state.check(f"orthonormality[alpha={a}]", "<phi_n, phi_m> = delta_nm", test)
    worst = max((r["max_deviation"] for r in state.records), default=0.0)
    state.summary = {"max_deviation": worst, "nmax": nmax, "tol": tol}


@suite("kernel-equality")
def kernel_equality(state: SuiteRun) -> None:
    """Closed-form kernel against the truncated spectral series on an (x, y) grid."""
    cfg = state.config
    r_values = cfg.r or [0.1, 0.5, 0.9, 0.95]
    r_max = get_settings().r_series_max
    if any(r > r_max for r in r_values):
        raise ConfigError("r", f"the spectral series is limited to r <= {r_max}")
    grid = np.asarray(cfg.u or np.linspace(0.1, 5.0, 12), dtype=float)
    if np.any(grid <= 0.0):
        raise ConfigError("u", "kernel points must be > 0")
    tol = cfg.tol or 1e-8
    X, Y = np.meshgrid(grid, grid, indexing="ij")
    for a in _alpha_default(cfg, [-0.5, 0.5, 2.0]):
        for r in r_values:

            def test(a: float = a, r: float = r) -> Tuple[bool, str]:
                closed = kernel_closed(a, r, X, Y)
                series = kernel_series(a, r, X, Y)
                diag = kernel_closed(a, r, grid, grid)
                scale = np.maximum(np.abs(closed), np.sqrt(np.outer(diag, diag)))
                err = float(np.max(np.abs(closed - series) / scale))
                state.records.append({"alpha": a, "r": r, "max_scaled_error": err})
                return err < tol, f"max scaled error {err:.3e}"

            state.check(f"kernel-equality[alpha={a}, r={r}]", "R_r(x, y) = sum_k r^k phi_k(x) phi_k(y)", test)
    state.summary = {"max_scaled_error": max((r["max_scaled_error"] for r in state.records), default=0.0)}


_P_KINDS = {0.25: "kernel", 0.75: "dx", 1.0: "dx_product"}
_CLAIMS = {
    "kernel": "||R_r(x, .)||_2 <~ (1-r)^(-1/4)",
    "dx": "||d/dx R_r(x, .)||_2 <~ (1-r)^(-3/4)",
    "dx_product": "||d/dx1 R_r(x, .)||_2 <~ (1-r)^(-(d+2)/4) for d=2",
}


@suite("norm-scaling")
def norm_scaling(state: SuiteRun) -> None:
    """max/min over r of sup_x norm * (1-r)^p stays below 10."""
    cfg = state.config
    alpha = cfg.alpha[0] if cfg.alpha else 0.5
    r_values = cfg.r or [0.9, 0.99, 0.999]
    if cfg.p is None:
        kinds = [k for k in ("kernel", "dx", "dx_product") if k == "kernel" or is_hermite_class(alpha)]
    else:
        kind = next((k for p, k in _P_KINDS.items() if math.isclose(p, cfg.p)), None)
        if kind is None:
            raise ConfigError("p", f"norm-scaling exponents are 1/4, 3/4 or 1, got {cfg.p}")
        kinds = [kind]
        if kinds[0] != "kernel" and not is_hermite_class(alpha):
            raise ConfigError("alpha", "derivative norms need alpha in {-1/2} U [1/2, inf)")
    x_grid = cfg.u or None
    for kind in kinds:

        def test(kind: str = kind) -> Tuple[bool, str]:
            scan = norm_scaling_scan(alpha, r_values, kind=kind, p=cfg.p, x_grid=x_grid)
            state.records.extend({"kind": kind, **row} for row in scan.records())
            state.summary[f"{kind}_ratio"] = scan.ratio
            return scan.ratio <= 10.0, f"max/min of rescaled norms {scan.ratio:.3f} with p={scan.p}"

        state.check(f"norm-scaling[{kind}]", _CLAIMS[kind], test)
    state.plot = {"x": "r", "y": "rescaled"}


def _family(cfg: RunConfig):
    return atom_family(count=20, seed=cfg.seed, dims=(1, 2), measure_range=(1e-4, 10.0))


def family_bound(values: Sequence[float], limit: float = 10.0) -> Tuple[bool, float]:
    """max/min of positive finite per-atom values and whether it stays within limit."""
    if not values or not all(math.isfinite(v) and v > 0.0 for v in values):
        return False, math.inf
    ratio = max(values) / min(values)
    return ratio <= limit, ratio


@suite("atom-integral")
def atom_integral(state: SuiteRun) -> None:
    """The r-integral of ||R_r a||_2 over a seeded atom family: finite, mesh-stable, uniform."""
    cfg = state.config
    alpha = cfg.alpha[0] if cfg.alpha else 0.5
    if not is_hermite_class(alpha):
        raise ConfigError("alpha", "the atom integral needs alpha in {-1/2} U [1/2, inf)")
    values: List[float] = []
    for atom in _family(cfg):

        def test(atom=atom) -> Tuple[bool, str]:
            result = atom_r_integral_checked(atom, [alpha] * atom.d)
            bound = 4.0 / atom.d * atom.l2_norm()
            state.records.append({**result.record(), "bound": bound})
            values.append(result.value)
            ok = math.isfinite(result.value) and result.value <= bound * (1.0 + 1e-6) and result.relative_change <= 1e-3
            return ok, f"value {result.value:.6g}, bound {bound:.6g}, mesh change {result.relative_change:.2e}"

        state.check(
            f"atom-integral[d={atom.d}, |B|={atom.ball_measure:.3g}]",
            "int_0^1 ||R_r a||_2 (1-r)^((d-4)/4) dr <~ 1",
            test,
        )

    def uniform() -> Tuple[bool, str]:
        ok, ratio = family_bound(values)
        state.summary["family_ratio"] = ratio
        return ok, f"max/min over the family {ratio:.3f}"

    state.check("atom-integral[family]", "uniform in the atom", uniform)


@suite("hardy-atoms")
def hardy_atoms(state: SuiteRun) -> None:
    """Hardy sums at beta = 3d/4 over the atom family, plus the Beta identity."""
    cfg = state.config
    alpha = cfg.alpha[0] if cfg.alpha else 0.5
    caps = {1: cfg.nmax or 2000, 2: min(cfg.nmax or 200, 200)}
    sup = sup_norm_scan(alpha, 200, derivative=False)
    c1 = float(np.max(sup.phi_sup * (sup.orders + 1.0) ** (1.0 / 12.0)))
    values: List[float] = []
    for atom in _family(cfg):
        nmax, beta = caps[atom.d], 0.75 * atom.d

        def test(atom=atom, nmax: int = nmax, beta: float = beta) -> Tuple[bool, str]:
            a = [alpha] * atom.d
            table = coefficients_up_to(atom.to_target(), a, nmax, estimate_error=False)
            critical = hardy_sum(table, a, beta, nmax)
            weaker = hardy_sum(table, a, float(atom.d), nmax)
            size = coefficient_size_ratio(table, atom.l1_norm())
            state.records.append(
                {"d": atom.d, "measure": atom.ball_measure, "seed": atom.seed, "size_ratio": size, "weaker": weaker.value,
                 **critical.summary()}
            )
            values.append(critical.value)
            ok = critical.cauchy_tail < 0.05 and weaker.value <= critical.value * (1.0 + 1e-12) and size <= 1.5 * c1**atom.d
            return ok, (
                f"S={critical.value:.6g}, tail={critical.cauchy_tail:.3e}, beta=d sum={weaker.value:.6g}, "
                f"coefficient constant {size:.3f} vs {1.5 * c1**atom.d:.3f}"
            )

        state.check(
            f"hardy-atoms[d={atom.d}, |B|={atom.ball_measure:.3g}]",
            "sum_n |<a, phi_n>| / (|n|+1)^(3d/4) <~ ||a||_H1",
            test,
        )

    def bounded() -> Tuple[bool, str]:
        ok, ratio = family_bound(values)
        state.summary["family_max"] = max(values) if values else None
        state.summary["family_ratio"] = ratio
        return ok, f"max S {state.summary['family_max']}, max/min over the family {ratio:.3f}"

    state.check("hardy-atoms[family]", "bounded uniformly over the atom family", bounded)

    for d in (1, 2):
        for n in (10, 50, 200):

            def beta_test(n: int = n, d: int = d) -> Tuple[bool, str]:
                integral, normalized = beta_identity_check(n, d)
                exact = beta_reference(n, d)
                factor = normalized / beta_asymptote(d)
                state.records.append({"d": d, "n": n, "beta_integral": integral, "beta_exact": exact, "beta_factor": factor})
                ok = abs(integral - exact) <= 1e-10 * exact and 1.0 / 3.0 <= factor <= 3.0
                return ok, f"I={integral:.6e} (exact {exact:.6e}), normalized/asymptote={factor:.4f}"

            state.check(f"beta-identity[d={d}, n={n}]", "B(2n+1, 3d/4) ~ Gamma(3d/4) (2n)^(-3d/4)", beta_test)


@suite("sharpness")
def sharpness(state: SuiteRun) -> None:
    """Log growth at beta = 3/4 against convergence at beta = 0.85, and the inner-series decay."""
    cfg = state.config
    alpha = cfg.alpha[0] if cfg.alpha else 0.5
    x = cfg.u[0] if cfg.u else 1.0
    nmax = cfg.nmax or 10**5

    def critical() -> Tuple[bool, str]:
        report = divergence_demo(alpha, x, 0.75, nmax)
        state.records.extend({"beta": 0.75, **row} for row in report.records())
        state.summary["critical"] = report.summary()
        fit, inc = report.fit, report.increments
        ok = fit is not None and fit.slope > 0.0 and fit.r_squared >= 0.9 and abs(inc.exponent) < 0.05
        return ok, f"slope={fit.slope:.4f}, R^2={fit.r_squared:.4f}, increment exponent={inc.exponent:.4f}" if fit else "Nmax too small"

    state.check("sharpness[beta=3/4]", "sum_n |phi_n(x)| / (|n|+1)^(3d/4) = infinity", critical)

    def above() -> Tuple[bool, str]:
        report = divergence_demo(alpha, x, 0.85, nmax)
        state.records.extend({"beta": 0.85, **row} for row in report.records())
        state.summary["above"] = report.summary()
        inc = report.increments
        ok = inc is not None and -0.2 < inc.exponent < -0.05
        return ok, f"increment exponent={inc.exponent:.4f}, tail={report.cauchy_tail:.4f}" if inc else "Nmax too small"

    state.check("sharpness[beta=0.85]", "dyadic increments decay once beta > 3d/4", above)

    for d in (1, 2):

        def inner(d: int = d) -> Tuple[bool, str]:
            report = inner_decay_scan([10, 100, 1000], d)
            state.records.extend({"d": d, **row} for row in report.records())
            state.summary[f"inner_d{d}"] = report.summary()
            return report.dominated(10.0), f"normalized {report.normalized}, fitted exponent {report.fit.exponent:.3f}"

        state.check(f"inner-series[d={d}]", "|sum_k cos(sqrt k) / (n+k)^(d+1)| <~ n^(-d-1/4)", inner)

        def hurwitz(d: int = d) -> Tuple[bool, str]:
            checks = [envelope_series_check(n, d) for n in (10, 100, 1000)]
            ok = all(c.ratio <= 1.0 for c in checks) and abs(checks[-1].ratio - 1.0) < 0.01
            return ok, "ratios " + ", ".join(f"{c.ratio:.5f}" for c in checks)

        state.check(f"envelope-series[d={d}]", "sum_k (n+k)^(-d-1) = n^(-d)/d + O(n^(-d-1))", hurwitz)

    def cos_squared() -> Tuple[bool, str]:
        check = cos_squared_decomposition_check(1.0, 0.5, 10**5)
        state.summary["cos_squared"] = check.record()
        gap = abs(check.remainder - check.remainder_limit)
        ok = check.termwise_max_error <= 1e-13 and gap < 1e-2
        return ok, f"termwise error {check.termwise_max_error:.2e}, remainder {check.remainder:.6f} vs limit {check.remainder_limit:.6f}"

    state.check("cos-squared", "cos^2 = (1 + cos(2 theta)) / 2 splits off H(K)/2", cos_squared)
    state.plot = {"x": "log_N", "y": "S"}


@suite("trig-series")
def trig_series(state: SuiteRun) -> None:
    """Summation by parts for sum_k cos(t sqrt k)/k: identity, limit stability, Cauchy differences."""
    cfg = state.config
    t = cfg.t
    K = cfg.K or 10**6

    def identity() -> Tuple[bool, str]:
        errors = [trig_series_accelerated(t, kind, 1000).error for kind in ("cos", "sin")]
        return max(errors) <= 1e-10, f"|accelerated - naive| = {max(errors):.2e}"

    state.check("trig-series[identity]", "summation by parts is exact at finite K", identity)

    def limits() -> Tuple[bool, str]:
        low = trig_series_accelerated(t, "cos", 10**4)
        high = trig_series_accelerated(t, "cos", K)
        state.records.extend([low.to_dict(), high.to_dict()])
        drift = abs(low.limit - high.limit)
        naive_gap = abs(high.naive - high.limit)
        state.summary.update({"limit": high.limit, "limit_drift": drift, "naive_gap": naive_gap})
        return drift <= 1e-6 and naive_gap < 1e-2, f"limit drift {drift:.2e}, naive gap at K={K}: {naive_gap:.2e}"

    state.check("trig-series[limit]", "sum_k cos(t sqrt k)/k converges", limits)

    def cauchy() -> Tuple[bool, str]:
        rows = cauchy_differences(t, "cos", 1000, K)
        state.records.extend(rows)
        ok = all(row["difference"] <= row["bound"] for row in rows)
        return ok, f"{len(rows)} doublings, largest difference/bound {max(r['difference'] / r['bound'] for r in rows):.3f}"

    state.check("trig-series[cauchy]", "|S(2K) - S(K)| <= 4 / (|t| sqrt K)", cauchy)


@suite("l1-uniform")
def l1_uniform(state: SuiteRun) -> None:
    """sup_u of sum_{k<=K} |phi_k(u)| / k^(3/4+eps) with small Cauchy tails."""
    cfg = state.config
    K = cfg.K or 10**4
    grid = np.asarray(cfg.u or np.linspace(0.1, 60.0, 240), dtype=float)
    for a in _alpha_default(cfg, [-0.5, 0.5, 2.0]):

        def test(a: float = a) -> Tuple[bool, str]:
            scan = uniform_phi_sum_scan(a, cfg.eps, grid, K)
            state.records.extend({"alpha": a, **row} for row in scan.records())
            state.summary[f"alpha={a}"] = scan.summary()
            tail = float(scan.tails.max())
            ok = math.isfinite(scan.grid_max) and tail < 0.05
            return ok, f"grid max {scan.grid_max:.5g} at u={scan.argmax_u:.4g}, largest tail {tail:.4f}"

        state.check(f"l1-uniform[alpha={a}]", "sum_k |phi_k(u)| / k^(3/4+eps) <~ 1 uniformly in u", test)

    def contrast() -> Tuple[bool, str]:
        a = cfg.alpha[0] if cfg.alpha else 0.5
        flat = uniform_phi_sum_scan(a, 0.0, [1.0], K)
        damped = uniform_phi_sum_scan(a, max(cfg.eps, 0.25), [1.0], K)
        growth, tail = float(flat.tails[0]), float(damped.tails[0])
        state.summary["contrast"] = {"eps0_tail": growth, "eps_tail": tail}
        return growth > 2.0 * tail, f"eps=0 tail {growth:.4f} against {tail:.4f}"

    state.check("l1-uniform[eps=0 contrast]", "the bound fails at eps = 0", contrast)
    state.plot = {"x": "u", "y": "S"}


__all__ = ["SUITE_REGISTRY", "SuiteRun", "evaluate", "family_bound", "run_suite"]
