"""Independent reference computations for the test-suite (no package code)."""

import math

import numpy as np
from scipy import optimize, stats

from confdomain import confidence as ci
from confdomain.measurement import NormalState, Sample, TwoSample, sample_mean


def bisect(fn, lo, hi, iters=200):
    """Plain bisection for an increasing fn crossing zero on [lo, hi]."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if fn(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def eta_df2_closed_form(gamma, a):
    """log-sigma radius for n = 3 from exp(-a/2 e^-2h) - exp(-a/2 e^2h) = gamma."""
    return bisect(
        lambda h: math.exp(-a / 2 * math.exp(-2 * h)) - math.exp(-a / 2 * math.exp(2 * h)) - gamma,
        0.0,
        20.0,
    )


def eta_log_scipy(gamma, n, a):
    chi = stats.chi2(n - 1)
    return optimize.brentq(
        lambda h: chi.cdf(a * math.exp(2 * h)) - chi.cdf(a * math.exp(-2 * h)) - gamma,
        1e-12,
        50.0,
        xtol=1e-15,
    )


def equivalence_disagreements(construction, pairs, seed, n=3, m=4, gamma=0.95):
    """Count (x, omega) pairs where domain membership and d(E(x), pi(omega)) <= eta differ.

    Returns (disagreements, inside, outside).
    """
    rng = np.random.default_rng(seed)
    bad = inside = outside = 0
    for _ in range(pairs):
        x = Sample(rng.normal(rng.uniform(-3, 3), rng.uniform(0.3, 3), n))
        mean = sample_mean(x)
        spread = float(np.std(x.values)) or 1.0
        omega = NormalState(mean + rng.uniform(-4, 4) * spread, spread * math.exp(rng.uniform(-3, 3)))
        if construction == "mean-known-sigma":
            member = ci.interval_mean_known_sigma(x, gamma).contains(omega)
            dist = ci.MeanDistance()(NormalState(mean, 1.0), omega)
            rule = dist <= ci.eta_mean_known_sigma(gamma, n, omega.sigma).eta
        elif construction in ("variance-mle", "variance-unbiased", "variance-scaled"):
            est = {
                "variance-mle": ci.Mle(),
                "variance-unbiased": ci.Unbiased(),
                "variance-scaled": ci.Scaled(0.37),
            }[construction]
            member = ci.interval_variance(x, gamma, est).contains(omega)
            dist = ci.LogScaleDistance()(ci.point_estimate(x, est), omega)
            rule = dist <= ci.eta_log_sigma(gamma, n, est.divisor(n)).eta
        elif construction == "variance-alpha-point":
            est = ci.Scaled(ci.alpha_point_reconciliation_c(gamma, n))
            member = ci.interval_variance_alpha_point(x, gamma).contains(omega)
            dist = ci.LogScaleDistance()(ci.point_estimate(x, est), omega)
            rule = dist <= ci.eta_log_sigma(gamma, n, est.divisor(n)).eta
        elif construction == "mean-t":
            member = ci.interval_mean_t(x, gamma).contains(omega.mu)
            dist = ci.StudentizedDistance(x)(mean, omega.mu)
            rule = dist <= ci.t_threshold(gamma, n).eta
        elif construction == "mean-diff":
            y = Sample(rng.normal(rng.uniform(-3, 3), 1.0, m))
            mu2 = rng.uniform(-5, 5)
            theta = omega.mu - mu2
            s1, s2 = 1.0 + rng.uniform(0, 2), 0.5 + rng.uniform(0, 2)
            member = ci.interval_mean_diff(TwoSample(x, y), gamma, s1, s2).contains(theta)
            dist = ci.AbsoluteDistance()(mean - sample_mean(y), theta)
            rule = dist <= ci.eta_mean_diff(gamma, n, m, s1, s2).eta
        else:
            raise ValueError(construction)
        bad += member != rule
        inside += member
        outside += not member
    return bad, inside, outside


CONSTRUCTIONS = (
    "mean-known-sigma",
    "variance-mle",
    "variance-unbiased",
    "variance-scaled",
    "variance-alpha-point",
    "mean-t",
    "mean-diff",
)
