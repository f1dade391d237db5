"""Confidence domains for the normal measurement family.

A confidence domain is assembled from an estimator, a quantity of interest
and a semi-distance; this package provides the normal-family constructions,
the special functions behind them and a Monte Carlo coverage check.
"""

from .confidence import (
    AbsoluteDistance,
    EtaThreshold,
    IntegralScaleDistance,
    LogScaleDistance,
    MeanCone,
    MeanDistance,
    Mle,
    Scaled,
    StudentizedDistance,
    ThetaInterval,
    Unbiased,
    VarianceBand,
    alpha_point_reconciliation_c,
    chi2_tail_points,
    eta_generic,
    eta_log_sigma,
    eta_mean_diff,
    eta_mean_known_sigma,
    interval_mean_diff,
    interval_mean_known_sigma,
    interval_mean_t,
    interval_variance,
    interval_variance_alpha_point,
    point_estimate,
    t_threshold,
)
from .coverage import CoverageExperiment, CoverageReport, run_coverage
from .errors import DegenerateEstimateError, DegenerateSampleError, DomainError
from .estimation import FixedMu, FixedSigma, Full, MleResult, log_likelihood, mle
from .measurement import (
    NormalState,
    Sample,
    TwoSample,
    image_prob_mean,
    image_prob_sumsq,
    mle_sigma,
    sample_mean,
    sample_sumsq,
    simulate_measurement,
    unbiased_sigma,
)
from .specfun import ChiSquared, StdNormal, StudentT, cdf, pdf, quantile

__version__ = "0.1.0"
