"""Special functions and the three reference distributions.

Densities, distribution functions and quantiles for the standard normal,
chi-squared and Student t laws. Everything is scalar, pure Python and
reentrant; quantiles are memoised because interval constructions ask for the
same handful of tail points over and over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

__all__ = [
    "StdNormal",
    "ChiSquared",
    "StudentT",
    "Distribution",
    "log_gamma",
    "gamma_p",
    "gamma_q",
    "beta_inc",
    "pdf",
    "cdf",
    "quantile",
]

MAX_DF = 10**6
EPS = 2.220446049250313e-16
FPMIN = 1e-300
MAX_ITER = 100_000

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class StdNormal:
    """Standard normal law N(0, 1)."""


@dataclass(frozen=True)
class ChiSquared:
    """Chi-squared law with ``df`` degrees of freedom."""

    df: int

    def __post_init__(self):
        _check_df(self.df)


@dataclass(frozen=True)
class StudentT:
    """Student t law with ``df`` degrees of freedom."""

    df: int

    def __post_init__(self):
        _check_df(self.df)


Distribution = StdNormal | ChiSquared | StudentT


def _check_df(df):
    if isinstance(df, bool) or not isinstance(df, int):
        raise DomainError(f"degrees of freedom must be an integer, got {df!r}")
    if not 1 <= df <= MAX_DF:
        raise DomainError(f"degrees of freedom must lie in [1, {MAX_DF}], got {df}")


def _check_finite(x):
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x!r}")


# ---------------------------------------------------------------------------
# Gamma and beta functions
# ---------------------------------------------------------------------------


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0 (Lanczos, g=7)."""
    if not x > 0 or not math.isfinite(x):
        raise DomainError(f"log_gamma requires finite x > 0, got {x!r}")
    if x < 0.5:
        # reflection keeps the series in its accurate region
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(acc)


def _gamma_series(a, x):
    # P(a, x) by its power series; converges fast for x < a + 1
    ap = a
    term = total = 1.0 / a
    for _ in range(MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * EPS:
            break
    else:
        raise ArithmeticError(f"incomplete gamma series did not converge (a={a}, x={x})")
    return total * math.exp(-x + a * math.log(x) - log_gamma(a))


def _gamma_cfrac(a, x):
    # Q(a, x) by continued fraction, modified Lentz
    b = x + 1.0 - a
    c = 1.0 / FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < FPMIN:
            d = FPMIN
        c = b + an / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            break
    else:
        raise ArithmeticError(f"incomplete gamma fraction did not converge (a={a}, x={x})")
    return math.exp(-x + a * math.log(x) - log_gamma(a)) * h


def gamma_p(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x)."""
    if not a > 0:
        raise DomainError(f"gamma_p requires a > 0, got {a!r}")
    if x < 0 or math.isnan(x):
        raise DomainError(f"gamma_p requires x >= 0, got {x!r}")
    if x == 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return min(1.0, _gamma_series(a, x))
    return max(0.0, 1.0 - _gamma_cfrac(a, x))


def gamma_q(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    if not a > 0:
        raise DomainError(f"gamma_q requires a > 0, got {a!r}")
    if x < 0 or math.isnan(x):
        raise DomainError(f"gamma_q requires x >= 0, got {x!r}")
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return max(0.0, 1.0 - _gamma_series(a, x))
    return min(1.0, _gamma_cfrac(a, x))


def _beta_cfrac(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, MAX_ITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            return h
    raise ArithmeticError(f"incomplete beta fraction did not converge (a={a}, b={b}, x={x})")


def beta_inc(a: float, b: float, x: float, y: float | None = None) -> float:
    """Regularized incomplete beta I_x(a, b).

    ``y`` may carry ``1 - x`` computed without cancellation by the caller.
    """
    if y is None:
        y = 1.0 - x
    if not (a > 0 and b > 0):
        raise DomainError(f"beta_inc requires a, b > 0, got a={a!r}, b={b!r}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"beta_inc requires 0 <= x <= 1, got {x!r}")
    if x == 0.0:
        return 0.0
    if y == 0.0:
        return 1.0
    log_front = (
        log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * math.log(x) + b * math.log(y)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cfrac(a, b, x) / a
    return 1.0 - front * _beta_cfrac(b, a, y) / b


# ---------------------------------------------------------------------------
# Distribution surface
# ---------------------------------------------------------------------------


def pdf(kind: Distribution, x: float) -> float:
    """Density of ``kind`` at ``x``."""
    _check_finite(x)
    if isinstance(kind, StdNormal):
        return math.exp(-0.5 * x * x - _HALF_LOG_2PI)
    if isinstance(kind, ChiSquared):
        if not x > 0:
            raise DomainError(f"chi-squared density is supported on x > 0, got {x!r}")
        k = 0.5 * kind.df
        return math.exp((k - 1.0) * math.log(x) - 0.5 * x - k * math.log(2.0) - log_gamma(k))
    if isinstance(kind, StudentT):
        nu = float(kind.df)
        log_norm = log_gamma(0.5 * (nu + 1.0)) - log_gamma(0.5 * nu) - 0.5 * math.log(nu * math.pi)
        return math.exp(log_norm - 0.5 * (nu + 1.0) * math.log1p(x * x / nu))
    raise TypeError(f"unknown distribution {kind!r}")


def cdf(kind: Distribution, x: float) -> float:
    """Distribution function of ``kind`` at ``x``."""
    if math.isnan(x):
        raise DomainError("argument must not be NaN")
    if isinstance(kind, StdNormal):
        return 0.5 * math.erfc(-x / math.sqrt(2.0))
    if isinstance(kind, ChiSquared):
        if x <= 0:
            return 0.0
        return gamma_p(0.5 * kind.df, 0.5 * x)
    if isinstance(kind, StudentT):
        if math.isinf(x):
            return 1.0 if x > 0 else 0.0
        nu = float(kind.df)
        x2 = x * x
        tail = 0.5 * beta_inc(0.5 * nu, 0.5, nu / (nu + x2), x2 / (nu + x2))
        return 1.0 - tail if x > 0 else tail
    raise TypeError(f"unknown distribution {kind!r}")


def _median_guess(kind):
    if isinstance(kind, ChiSquared):
        return float(kind.df)
    return 0.0


@lru_cache(maxsize=4096)
def quantile(kind: Distribution, p: float) -> float:
    """Inverse distribution function.

    The root of ``cdf(kind, q) - p`` is bracketed by geometric expansion from
    the median, narrowed by bisection and polished with one Newton step.
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"probability must lie strictly inside (0, 1), got {p!r}")
    start = _median_guess(kind)
    f_start = cdf(kind, start)
    if f_start == p:
        return start

    positive = isinstance(kind, ChiSquared)
    if f_start < p:
        lo, step = start, max(1.0, abs(start))
        hi = start + step
        while cdf(kind, hi) < p:
            lo = hi
            step *= 2.0
            hi = start + step
            if math.isinf(hi):
                raise ArithmeticError(f"could not bracket quantile p={p} for {kind}")
    else:
        hi = start
        if positive:
            lo = start * 0.5
            while cdf(kind, lo) > p:
                hi = lo
                lo *= 0.5
                if lo < FPMIN:
                    raise ArithmeticError(f"could not bracket quantile p={p} for {kind}")
        else:
            step = 1.0
            lo = start - step
            while cdf(kind, lo) > p:
                hi = lo
                step *= 2.0
                lo = start - step
                if math.isinf(lo):
                    raise ArithmeticError(f"could not bracket quantile p={p} for {kind}")

    while True:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if positive:
            tol = 1e-13 * min(1.0, mid)
        else:
            tol = 1e-13 * max(1.0, abs(mid))
        if hi - lo <= tol:
            break
        f_mid = cdf(kind, mid)
        if f_mid == p:
            return mid
        if f_mid < p:
            lo = mid
        else:
            hi = mid

    q = 0.5 * (lo + hi)
    density = pdf(kind, q)
    if density > 0:
        polished = q - (cdf(kind, q) - p) / density
        if lo <= polished <= hi:
            q = polished
    return q
