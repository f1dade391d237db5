"""Exit criteria. Each test logs one PASS/FAIL line shown in the terminal summary."""

import math
import time

import numpy as np
import pytest
from scipy import integrate

from _oracles import CONSTRUCTIONS, equivalence_disagreements
from confdomain import confidence as ci
from confdomain import specfun
from confdomain.coverage import CoverageExperiment, run_coverage
from confdomain.estimation import log_likelihood, mle
from confdomain.measurement import NormalState, Sample
from confdomain.specfun import ChiSquared, StdNormal, StudentT, cdf, quantile


def clear_caches():
    specfun.quantile.cache_clear()
    ci._log_eta.cache_clear()


def report(log, number, title, checks):
    """checks: list of (label, ok, detail)."""
    ok = all(c[1] for c in checks)
    failed = [f"{label} ({detail})" for label, good, detail in checks if not good]
    suffix = "" if ok else " -- failing: " + "; ".join(failed)
    log.append(f"[{number}] {'PASS' if ok else 'FAIL'}  {title}{suffix}")
    assert ok, suffix


def near(label, value, target, tol):
    return (label, abs(value - target) <= tol, f"{value:.6g} vs {target} +/- {tol:g}")


def test_c1_log_sigma_constants(acceptance_log):
    clear_caches()
    t0 = time.perf_counter()
    eta = ci.eta_log_sigma(0.95, 3, 3).eta
    elapsed = time.perf_counter() - t0
    report(acceptance_log, 1, "log-sigma threshold n=3 gamma=0.95", [
        near("exp(-eta)", math.exp(-eta), 0.1849, 5e-4),
        near("exp(eta)", math.exp(eta), 5.4077, 5e-4),
        near("lo coefficient", math.exp(-2 * eta) / 3, 0.0114, 5e-4),
        near("hi coefficient", math.exp(2 * eta) / 3, 9.748, 5e-3),
        ("runtime < 1 s", elapsed < 1.0, f"{elapsed:.3f} s"),
    ])


def test_c2_unbiased_variant(acceptance_log):
    eta_u = ci.eta_log_sigma(0.95, 3, 2).eta
    lo_coef = ci.interval_variance(Sample([0.0, 1.0, 2.0]), 0.95, ci.Unbiased()).lo / 2.0
    # brute-force oracle: integrate the chi2_2 density over the computed limits
    mass, _ = integrate.quad(
        lambda x: math.exp(-x / 2) / 2, 2 * math.exp(-2 * eta_u), 2 * math.exp(2 * eta_u),
        epsabs=1e-14, epsrel=1e-14,
    )
    report(acceptance_log, 2, "unbiased log-sigma variant", [
        near("exp(-eta')", math.exp(-eta_u), 0.2265, 5e-4),
        near("exp(eta')", math.exp(eta_u), 4.4154, 5e-4),
        near("lo coefficient", lo_coef, 0.02565, 5e-4),
        near("quadrature mass", mass, 0.95, 1e-9),
    ])


def test_c3_alpha_point(acceptance_log):
    chi_lo, chi_hi = ci.chi2_tail_points(0.95, 3)
    band = ci.interval_variance_alpha_point(Sample([0.0, 1.0, 2.0]), 0.95)
    report(acceptance_log, 3, "alpha-point tail points and coefficients", [
        near("chi2 lower", chi_lo, 0.0506, 1e-3),
        near("chi2 upper", chi_hi, 7.378, 1e-3),
        near("lo coefficient", band.lo / 2.0, 0.1355, 1e-2),
        near("hi coefficient", band.hi / 2.0, 19.763, 1e-2),
    ])


def test_c4_reconciliation(acceptance_log):
    clear_caches()
    base = [0.25, -1.1, 0.8, 2.0, 0.1]
    worst = 0.0
    t0 = time.perf_counter()
    for n in range(2, 21):
        for gamma in (0.8, 0.9, 0.95, 0.99):
            c = ci.alpha_point_reconciliation_c(gamma, n)
            x = Sample(np.resize(base, n))
            a = ci.interval_variance(x, gamma, ci.Scaled(c))
            b = ci.interval_variance_alpha_point(x, gamma)
            worst = max(worst, abs(a.lo - b.lo) / b.lo, abs(a.hi - b.hi) / b.hi)
    elapsed = time.perf_counter() - t0
    report(acceptance_log, 4, "Scaled(c) band equals alpha-point band, n=2..20", [
        ("relative error <= 1e-8", worst <= 1e-8, f"worst {worst:.2e}"),
        ("runtime < 5 s", elapsed < 5.0, f"{elapsed:.2f} s"),
    ])


COVERAGE_CASES = ["mean-known-sigma", "variance", "variance-alpha-point", "mean-t", "mean-diff"]


@pytest.mark.slow
@pytest.mark.parametrize("case", COVERAGE_CASES)
def test_c5_coverage(acceptance_log, case):
    exp = CoverageExperiment(
        case=case,
        state=NormalState(0.0, 1.0),
        n=3,
        gamma=0.95,
        trials=100_000,
        seed=20240601,
        state2=NormalState(1.0, 2.0),
        m=4,
    )
    t0 = time.perf_counter()
    r = run_coverage(exp)
    elapsed = time.perf_counter() - t0
    report(acceptance_log, 5, f"coverage {case}", [
        ("|fraction - 0.95| <= 5 stderr", r.within(5.0), f"{r.fraction:.5f}, 5se={5 * r.stderr:.5f}"),
        ("no degenerate samples", r.degenerate_count == 0, str(r.degenerate_count)),
        ("runtime < 30 s", elapsed < 30.0, f"{elapsed:.2f} s"),
    ])


def test_c6_oracle_equivalence(acceptance_log):
    worst = 0.0
    for n in range(2, 11):
        for gamma in (0.9, 0.95):
            closed = ci.eta_log_sigma(gamma, n, n).eta
            for state in (NormalState(0.0, 1.0), NormalState(5.0, 0.2)):
                worst = max(worst, abs(ci.eta_generic(gamma, n, math.log, state).eta - closed))
    grid = np.linspace(0.0, 50.0, 100)
    cdf_err = max(abs(cdf(ChiSquared(2), float(x)) - (1 - math.exp(-x / 2))) for x in grid)
    report(acceptance_log, 6, "generic H=ln threshold and chi2(2) closed form", [
        ("eta_generic vs eta_log_sigma <= 1e-8", worst <= 1e-8, f"worst {worst:.2e}"),
        ("chi2(2) CDF <= 1e-12", cdf_err <= 1e-12, f"worst {cdf_err:.2e}"),
    ])


def test_c7_quantile_round_trip(acceptance_log):
    grid = [k / 1000 for k in range(1, 1000)]
    kinds = [StdNormal()]
    for df in (1, 2, 5, 10, 30):
        kinds += [ChiSquared(df), StudentT(df)]
    worst = 0.0
    for kind in kinds:
        for p in grid:
            worst = max(worst, abs(cdf(kind, quantile(kind, p)) - p))
    report(acceptance_log, 7, "cdf(quantile(p)) = p on 999-point grid", [
        ("max residual <= 1e-10", worst <= 1e-10, f"worst {worst:.2e}"),
    ])


def test_c8_mle_stationarity(acceptance_log):
    rng = np.random.default_rng(8)
    h = 1e-6
    worst = 0.0
    for _ in range(200):
        s = Sample(rng.normal(rng.uniform(-10, 10), rng.uniform(0.1, 5), int(rng.integers(2, 30))))
        st = mle(s).state
        f = lambda mu, sg: log_likelihood(s, NormalState(mu, sg))
        g_mu = (f(st.mu + h, st.sigma) - f(st.mu - h, st.sigma)) / (2 * h)
        g_sg = (f(st.mu, st.sigma + h) - f(st.mu, st.sigma - h)) / (2 * h)
        worst = max(worst, math.hypot(g_mu, g_sg))
    report(acceptance_log, 8, "numerical gradient at the full MLE, 200 samples", [
        ("gradient norm <= 1e-4", worst <= 1e-4, f"worst {worst:.2e}"),
    ])


@pytest.mark.slow
@pytest.mark.parametrize("construction", CONSTRUCTIONS)
def test_c9_membership_equivalence(acceptance_log, construction):
    bad, inside, outside = equivalence_disagreements(construction, 10_000, seed=909)
    report(acceptance_log, 9, f"membership vs semi-distance rule, {construction}", [
        ("zero disagreements", bad == 0, f"{bad} of 10000"),
        ("both outcomes exercised", inside > 0 and outside > 0, f"in={inside} out={outside}"),
    ])
