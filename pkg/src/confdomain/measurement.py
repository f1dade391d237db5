"""Normal measurement model: states, samples, sample statistics.

A measurement of the n-fold normal observable at state (mu, sigma) yields n
independent N(mu, sigma^2) values. The image probabilities below give the
laws of the sample mean and of the centred sum of squares under that model.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import IO, Iterable

from .errors import DomainError
from .rng import SplitMix64
from .specfun import ChiSquared, StdNormal, cdf


@dataclass(frozen=True)
class NormalState:
    """A point (mu, sigma) of the state space R x R+."""

    mu: float
    sigma: float

    def __post_init__(self):
        if not math.isfinite(self.mu):
            raise DomainError(f"mu must be finite, got {self.mu!r}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"sigma must be finite and > 0, got {self.sigma!r}")


@dataclass(frozen=True)
class Sample:
    """Ordered measured values (x_1, ..., x_n)."""

    values: tuple[float, ...]

    def __init__(self, values: Iterable[float]):
        vals = tuple(float(v) for v in values)
        if not vals:
            raise DomainError("a sample needs at least one value")
        for v in vals:
            if not math.isfinite(v):
                raise DomainError(f"sample values must be finite, got {v!r}")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def shifted(self, c: float) -> Sample:
        return Sample(v + c for v in self.values)

    def scaled(self, c: float) -> Sample:
        return Sample(v * c for v in self.values)


@dataclass(frozen=True)
class TwoSample:
    """Values from the parallel measurement of two normal populations."""

    x: Sample
    y: Sample

    @property
    def n(self) -> int:
        return self.x.n

    @property
    def m(self) -> int:
        return self.y.n


def sample_mean(s: Sample) -> float:
    return math.fsum(s.values) / s.n


def sample_sumsq(s: Sample) -> float:
    """Centred sum of squares, sum_k (x_k - mean)^2."""
    mean = sample_mean(s)
    return math.fsum((v - mean) ** 2 for v in s.values)


def mle_sigma(s: Sample) -> float:
    return math.sqrt(sample_sumsq(s) / s.n)


def unbiased_sigma(s: Sample) -> float:
    if s.n < 2:
        raise DomainError("the unbiased scale estimate needs n >= 2")
    return math.sqrt(sample_sumsq(s) / (s.n - 1))


def simulate_measurement(state: NormalState, n: int, rng_seed: int) -> Sample:
    """Draw n independent N(mu, sigma^2) values; deterministic in ``rng_seed``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    z = SplitMix64(rng_seed).normal(n)
    return Sample((state.mu + state.sigma * z).tolist())


def _check_interval(a, b):
    if math.isnan(a) or math.isnan(b):
        raise DomainError("interval endpoints must not be NaN")
    if a > b:
        raise DomainError(f"empty interval [{a}, {b}]")


def image_prob_mean(state: NormalState, n: int, interval: tuple[float, float]) -> float:
    """P(sample mean in [a, b]) under the n-fold measurement at ``state``."""
    a, b = interval
    _check_interval(a, b)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    scale = math.sqrt(n) / state.sigma
    z = StdNormal()
    return cdf(z, scale * (b - state.mu)) - cdf(z, scale * (a - state.mu))


def image_prob_sumsq(state: NormalState, n: int, interval: tuple[float, float]) -> float:
    """P(centred sum of squares in [a, b]); only sigma matters."""
    a, b = interval
    _check_interval(a, b)
    if a < 0:
        raise DomainError(f"sum of squares is non-negative; got lower endpoint {a}")
    if n < 2:
        raise DomainError("the sum-of-squares law needs n >= 2")
    chi = ChiSquared(n - 1)
    var = state.sigma**2
    return cdf(chi, b / var) - cdf(chi, a / var)


def parse_sample(lines: Iterable[str]) -> Sample:
    """Parse one float per line; blank lines and '#' comments are skipped."""
    values = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            v = float(line)
        except ValueError:
            raise DomainError(f"line {lineno}: not a number: {line!r}") from None
        if not math.isfinite(v):
            raise DomainError(f"line {lineno}: value must be finite, got {line!r}")
        values.append(v)
    return Sample(values)


def read_sample(path: str, stdin: IO[str] | None = None) -> Sample:
    """Read a sample file, or standard input when ``path`` is '-'."""
    if path == "-":
        return parse_sample(stdin if stdin is not None else sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return parse_sample(fh)
