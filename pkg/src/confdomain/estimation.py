"""Maximum likelihood for the normal family under simple constraint sets."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateEstimateError, DomainError
from .measurement import NormalState, Sample, sample_mean, sample_sumsq

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class Full:
    """Both mu and sigma are free."""


@dataclass(frozen=True)
class FixedSigma:
    """sigma is known and held at ``sigma1``."""

    sigma1: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma1) and self.sigma1 > 0):
            raise DomainError(f"fixed sigma must be finite and > 0, got {self.sigma1!r}")


@dataclass(frozen=True)
class FixedMu:
    """mu is known and held at ``mu1``."""

    mu1: float

    def __post_init__(self):
        if not math.isfinite(self.mu1):
            raise DomainError(f"fixed mu must be finite, got {self.mu1!r}")


ConstraintSet = Full | FixedSigma | FixedMu


@dataclass(frozen=True)
class MleResult:
    state: NormalState
    log_likelihood: float


def log_likelihood(s: Sample, state: NormalState) -> float:
    """Log of the joint normal density of ``s`` at ``state``."""
    sigma = state.sigma
    if not sigma > 0:
        raise DomainError(f"sigma must be > 0, got {sigma!r}")
    ss = math.fsum((v - state.mu) ** 2 for v in s.values)
    return -s.n * (_LOG_SQRT_2PI + math.log(sigma)) - ss / (2.0 * sigma * sigma)


def mle(s: Sample, k: ConstraintSet = Full()) -> MleResult:
    """Maximize the likelihood of ``s`` over the states allowed by ``k``.

    Raises:
        DegenerateEstimateError: the optimum would sit at sigma = 0, which is
            not a state.
    """
    if isinstance(k, Full):
        mu = sample_mean(s)
        sigma = math.sqrt(sample_sumsq(s) / s.n)
    elif isinstance(k, FixedSigma):
        mu, sigma = sample_mean(s), k.sigma1
    elif isinstance(k, FixedMu):
        mu = k.mu1
        sigma = math.sqrt(math.fsum((v - mu) ** 2 for v in s.values) / s.n)
    else:
        raise TypeError(f"unsupported constraint set {k!r}")
    if sigma == 0:
        raise DegenerateEstimateError(
            "likelihood is unbounded as sigma -> 0; no maximizing state exists"
        )
    state = NormalState(mu, sigma)
    return MleResult(state, log_likelihood(s, state))
