"""Confidence domains built from an estimator, a quantity and a semi-distance.

For a confidence level gamma, the threshold eta(omega) is the smallest radius
such that the estimate falls within semi-distance eta of the quantity with
probability at least gamma. The confidence domain of a measured value x is
then every quantity value within eta of the estimate E(x). Each builder here
solves that recipe in closed form for one normal-family construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, ClassVar

from .errors import DegenerateSampleError, DomainError
from .measurement import NormalState, Sample, TwoSample, sample_mean, sample_sumsq
from .specfun import ChiSquared, StdNormal, StudentT, cdf, quantile

ETA_WIDTH = 1e-12


def _check_gamma(gamma):
    if not 0.0 < gamma < 1.0:
        raise DomainError(f"confidence level must lie in (0, 1), got {gamma!r}")


def _check_positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")


def _spread(s: Sample) -> float:
    if s.n < 2:
        raise DomainError(f"this construction needs n >= 2, got n={s.n}")
    ss = sample_sumsq(s)
    if ss == 0:
        raise DegenerateSampleError("sample has zero spread (all values equal)")
    return ss


# ---------------------------------------------------------------------------
# Estimators of sigma
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mle:
    """sigma estimated as sqrt(S / n)."""

    name: ClassVar[str] = "mle"

    def divisor(self, n: int) -> float:
        return float(n)


@dataclass(frozen=True)
class Unbiased:
    """sigma estimated as sqrt(S / (n - 1))."""

    name: ClassVar[str] = "unbiased"

    def divisor(self, n: int) -> float:
        return float(n - 1)


@dataclass(frozen=True)
class Scaled:
    """sigma estimated as sqrt(S / (c n)) for a user-chosen c > 0."""

    c: float
    name: ClassVar[str] = "scaled"

    def __post_init__(self):
        _check_positive("scale constant c", self.c)

    def divisor(self, n: int) -> float:
        return self.c * n


EstimatorKind = Mle | Unbiased | Scaled


def point_estimate(s: Sample, estimator: EstimatorKind = Mle()) -> NormalState:
    """E(x) = (sample mean, sqrt(S / divisor))."""
    return NormalState(sample_mean(s), math.sqrt(_spread(s) / estimator.divisor(s.n)))


# ---------------------------------------------------------------------------
# Semi-distances
# ---------------------------------------------------------------------------


class MeanDistance:
    """|mu1 - mu2| on the state space; blind to sigma."""

    def __call__(self, a: NormalState, b: NormalState) -> float:
        return abs(a.mu - b.mu)


class LogScaleDistance:
    """|log sigma1 - log sigma2|; blind to mu."""

    def __call__(self, a: NormalState, b: NormalState) -> float:
        return abs(math.log(a.sigma) - math.log(b.sigma))


@dataclass(frozen=True)
class IntegralScaleDistance:
    """|H(sigma2) - H(sigma1)| for a strictly increasing antiderivative H."""

    antiderivative: Callable[[float], float]

    def __call__(self, a: NormalState, b: NormalState) -> float:
        return abs(self.antiderivative(b.sigma) - self.antiderivative(a.sigma))


class AbsoluteDistance:
    """|theta1 - theta2| on the real line."""

    def __call__(self, a: float, b: float) -> float:
        return abs(a - b)


@dataclass(frozen=True)
class StudentizedDistance:
    """|theta1 - theta2| measured in units of the sample's standard error.

    Depends on the measured sample through its unbiased scale estimate.
    """

    sample: Sample
    unit: float = field(init=False)

    def __post_init__(self):
        ss = _spread(self.sample)
        n = self.sample.n
        object.__setattr__(self, "unit", math.sqrt(ss / (n - 1)) / math.sqrt(n))

    def __call__(self, a: float, b: float) -> float:
        return abs(a - b) / self.unit


# ---------------------------------------------------------------------------
# Domains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaInterval:
    """Closed interval [lo, hi] of a real quantity."""

    lo: float
    hi: float
    tag: ClassVar[str] = "theta_interval"

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise DomainError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @property
    def center(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def half_width(self) -> float:
        return 0.5 * (self.hi - self.lo)

    def contains(self, theta: float) -> bool:
        return self.lo <= theta <= self.hi


@dataclass(frozen=True)
class MeanCone:
    """States with |mu - center| <= slope * sigma.

    With sigma known, the cone cuts a plain interval for mu; see ``slice``.
    """

    center: float
    slope: float
    known_sigma: float | None = None
    tag: ClassVar[str] = "mean_cone"

    def radius(self, sigma: float) -> float:
        return self.slope * sigma

    def contains(self, state: NormalState) -> bool:
        return abs(state.mu - self.center) <= self.radius(state.sigma)

    def slice(self, sigma: float | None = None) -> ThetaInterval:
        if sigma is None:
            sigma = self.known_sigma
        if sigma is None:
            raise DomainError("no sigma given for the slice of the cone")
        r = self.radius(sigma)
        return ThetaInterval(self.center - r, self.center + r)


@dataclass(frozen=True)
class VarianceBand:
    """States with lo <= sigma^2 <= hi; mu unrestricted."""

    lo: float
    hi: float
    tag: ClassVar[str] = "variance_band"

    def __post_init__(self):
        if not (0 <= self.lo < self.hi):
            raise DomainError(f"band needs 0 <= lo < hi, got [{self.lo}, {self.hi}]")

    def contains(self, state: NormalState) -> bool:
        return self.lo <= state.sigma * state.sigma <= self.hi

    def sigma_interval(self) -> tuple[float, float]:
        return math.sqrt(self.lo), math.sqrt(self.hi)


ConfidenceDomain = MeanCone | VarianceBand | ThetaInterval


@dataclass(frozen=True)
class EtaThreshold:
    eta: float
    gamma: float
    depends_on_state: bool


# ---------------------------------------------------------------------------
# Thresholds
# ---------------------------------------------------------------------------


def _upper_z(gamma):
    return quantile(StdNormal(), 0.5 * (1.0 + gamma))


def _mean_slope(gamma, n):
    return _upper_z(gamma) / math.sqrt(n)


def eta_mean_known_sigma(gamma: float, n: int, sigma: float) -> EtaThreshold:
    """Radius for |sample mean - mu| at level gamma: (sigma / sqrt n) z."""
    _check_gamma(gamma)
    _check_positive("sigma", sigma)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    # same product as MeanCone.radius so membership tests agree bit for bit
    return EtaThreshold(_mean_slope(gamma, n) * sigma, gamma, True)


def _bisect_increasing(fn, target, hi=1.0, limit=2.0**60):
    # smallest x >= 0 with fn(x) >= target, fn continuous and increasing
    lo = 0.0
    while fn(hi) < target:
        lo = hi
        hi *= 2.0
        if hi > limit:
            raise DomainError(f"could not bracket a threshold reaching {target}")
    while hi - lo > ETA_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if fn(mid) < target:
            lo = mid
        else:
            hi = mid
    return hi


def log_band_mass(eta: float, n: int, df_scale: float) -> float:
    """P(a e^{-2 eta} <= chi2_{n-1} <= a e^{2 eta}) with a = ``df_scale``."""
    chi = ChiSquared(n - 1)
    return cdf(chi, df_scale * math.exp(2.0 * eta)) - cdf(chi, df_scale * math.exp(-2.0 * eta))


@lru_cache(maxsize=1024)
def _log_eta(gamma, n, df_scale):
    return _bisect_increasing(lambda e: log_band_mass(e, n, df_scale), gamma)


def eta_log_sigma(gamma: float, n: int, df_scale: float) -> EtaThreshold:
    """Radius in log-sigma for the sigma estimator sqrt(S / a).

    Solves gamma = P(a e^{-2 eta} <= chi2_{n-1} <= a e^{2 eta}). The limits
    are tied together through one eta; this is not the equal-tails split.
    Use a = n for the MLE, n - 1 for the unbiased estimator, c n for Scaled(c).
    """
    _check_gamma(gamma)
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    _check_positive("df_scale", df_scale)
    return EtaThreshold(_log_eta(gamma, n, float(df_scale)), gamma, False)


def _invert_increasing(H, value, start):
    """Solve H(s) = value for s > 0; 0 or inf when value is outside H's range."""
    h0 = H(start)
    if not math.isfinite(h0):
        raise DomainError(f"H({start}) is not finite")
    lo = hi = start
    if h0 < value:
        h_prev = h0
        while True:
            hi = lo * 2.0
            h = H(hi)
            if not math.isfinite(h) or h < h_prev:
                raise DomainError("H must be finite and strictly increasing")
            if h >= value:
                break
            if h == h_prev or hi > 1e300:
                return math.inf
            lo, h_prev = hi, h
    elif h0 > value:
        h_prev = h0
        while True:
            lo = hi * 0.5
            h = H(lo)
            if not math.isfinite(h) or h > h_prev:
                raise DomainError("H must be finite and strictly increasing")
            if h <= value:
                break
            if h == h_prev or lo < 1e-300:
                return 0.0
            hi, h_prev = lo, h
    else:
        return start
    while True:
        mid = math.sqrt(lo * hi)
        if not lo < mid < hi or hi - lo <= 4e-16 * hi:
            break
        if H(mid) < value:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def eta_generic(
    gamma: float, n: int, antiderivative: Callable[[float], float], state: NormalState
) -> EtaThreshold:
    """Radius for the semi-distance |H(sigma1) - H(sigma2)| at ``state``.

    The MLE of sigma is sigma * sqrt(chi2_{n-1} / n), so each candidate radius
    is turned into a chi-squared interval by inverting H numerically.
    """
    _check_gamma(gamma)
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    H = antiderivative
    sigma = state.sigma
    h_sigma = H(sigma)
    chi = ChiSquared(n - 1)

    def mass(eta):
        s_lo = _invert_increasing(H, h_sigma - eta, sigma)
        s_hi = _invert_increasing(H, h_sigma + eta, sigma)
        upper = 1.0 if math.isinf(s_hi) else cdf(chi, n * (s_hi / sigma) ** 2)
        return upper - cdf(chi, n * (s_lo / sigma) ** 2)

    scale = max(abs(H(2.0 * sigma) - h_sigma), abs(h_sigma - H(0.5 * sigma)))
    if not scale > 0:
        raise DomainError("H must be strictly increasing")
    return EtaThreshold(_bisect_increasing(mass, gamma, hi=scale, limit=scale * 2.0**60), gamma, True)


def t_threshold(gamma: float, n: int) -> EtaThreshold:
    """Radius in studentized units: the upper (1 + gamma) / 2 point of t_{n-1}."""
    _check_gamma(gamma)
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    return EtaThreshold(quantile(StudentT(n - 1), 0.5 * (1.0 + gamma)), gamma, False)


def eta_mean_diff(gamma: float, n: int, m: int, sigma1: float, sigma2: float) -> EtaThreshold:
    """Radius for the difference of two sample means with known sigmas."""
    _check_gamma(gamma)
    _check_positive("sigma1", sigma1)
    _check_positive("sigma2", sigma2)
    if n < 1 or m < 1:
        raise DomainError(f"sample sizes must be >= 1, got n={n}, m={m}")
    se = math.sqrt(sigma1 * sigma1 / n + sigma2 * sigma2 / m)
    return EtaThreshold(se * _upper_z(gamma), gamma, False)


def chi2_tail_points(gamma: float, n: int) -> tuple[float, float]:
    """Equal-tail chi2_{n-1} points leaving (1 - gamma) / 2 in each tail."""
    _check_gamma(gamma)
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    chi = ChiSquared(n - 1)
    return quantile(chi, 0.5 * (1.0 - gamma)), quantile(chi, 0.5 * (1.0 + gamma))


# ---------------------------------------------------------------------------
# Domains for a measured sample
# ---------------------------------------------------------------------------


def interval_mean_known_sigma(s: Sample, gamma: float, sigma: float | None = None) -> MeanCone:
    """Cone |mu - mean| <= sigma z / sqrt(n); slicing at a known sigma gives mu's interval."""
    _check_gamma(gamma)
    if sigma is not None:
        _check_positive("sigma", sigma)
    return MeanCone(sample_mean(s), _mean_slope(gamma, s.n), sigma)


def interval_variance(
    s: Sample, gamma: float, estimator: EstimatorKind = Mle()
) -> VarianceBand:
    """Band for sigma^2 from the log-sigma semi-distance and ``estimator``."""
    _check_gamma(gamma)
    ss = _spread(s)
    a = estimator.divisor(s.n)
    eta = eta_log_sigma(gamma, s.n, a).eta
    return VarianceBand(math.exp(-2.0 * eta) / a * ss, math.exp(2.0 * eta) / a * ss)


def interval_variance_alpha_point(s: Sample, gamma: float) -> VarianceBand:
    """Equal-tails band [S / chi2_upper, S / chi2_lower]."""
    _check_gamma(gamma)
    ss = _spread(s)
    chi_lo, chi_hi = chi2_tail_points(gamma, s.n)
    return VarianceBand(ss / chi_hi, ss / chi_lo)


def alpha_point_reconciliation_c(gamma: float, n: int) -> float:
    """The c for which Scaled(c) reproduces the equal-tails band exactly."""
    chi_lo, chi_hi = chi2_tail_points(gamma, n)
    return math.sqrt(chi_lo * chi_hi) / n


def interval_mean_diff(
    ts: TwoSample, gamma: float, sigma1: float, sigma2: float
) -> ThetaInterval:
    """Interval for mu1 - mu2 with both sigmas known."""
    center = sample_mean(ts.x) - sample_mean(ts.y)
    r = eta_mean_diff(gamma, ts.n, ts.m, sigma1, sigma2).eta
    return ThetaInterval(center - r, center + r)


def interval_mean_t(s: Sample, gamma: float) -> ThetaInterval:
    """Student t interval for mu with sigma unknown."""
    dist = StudentizedDistance(s)
    r = t_threshold(gamma, s.n).eta * dist.unit
    center = sample_mean(s)
    return ThetaInterval(center - r, center + r)
