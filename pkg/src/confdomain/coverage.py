"""Monte Carlo check of coverage: how often does D_x contain the true quantity?

Trials run in fixed-size chunks. Chunk k draws from its own stream derived
from (seed, k), so totals do not depend on how chunks are spread over workers
or in which order they finish.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .confidence import (
    EstimatorKind,
    Mle,
    interval_mean_diff,
    interval_mean_known_sigma,
    interval_mean_t,
    interval_variance,
    interval_variance_alpha_point,
)
from .errors import DegenerateSampleError, DomainError
from .measurement import NormalState, Sample, TwoSample
from .rng import SplitMix64, derive_seed

CASES = ("mean-known-sigma", "variance", "variance-alpha-point", "mean-t", "mean-diff")
CHUNK_TRIALS = 4096
THREADS_ENV = "CI_DOMAIN_THREADS"


@dataclass(frozen=True)
class CoverageExperiment:
    case: str
    state: NormalState
    n: int
    gamma: float
    trials: int
    seed: int
    estimator: EstimatorKind = Mle()
    state2: NormalState | None = None
    m: int | None = None

    def __post_init__(self):
        if self.case not in CASES:
            raise DomainError(f"unknown case {self.case!r}; expected one of {CASES}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if not 0.0 < self.gamma < 1.0:
            raise DomainError(f"confidence level must lie in (0, 1), got {self.gamma!r}")
        min_n = 1 if self.case in ("mean-known-sigma", "mean-diff") else 2
        if self.n < min_n:
            raise DomainError(f"case {self.case} needs n >= {min_n}, got {self.n}")
        if self.case == "mean-diff":
            if self.state2 is None or self.m is None or self.m < 1:
                raise DomainError("mean-diff needs a second state and m >= 1")


@dataclass(frozen=True)
class CoverageReport:
    hits: int
    trials: int
    gamma: float
    degenerate_count: int = 0

    @property
    def fraction(self) -> float:
        return self.hits / self.trials

    @property
    def stderr(self) -> float:
        return math.sqrt(self.gamma * (1.0 - self.gamma) / self.trials)

    def within(self, k: float = 5.0) -> bool:
        """True when the empirical fraction is within k standard errors of gamma."""
        return abs(self.fraction - self.gamma) <= k * self.stderr

    def as_dict(self) -> dict:
        return {
            "hits": self.hits,
            "trials": self.trials,
            "fraction": self.fraction,
            "gamma": self.gamma,
            "stderr": self.stderr,
            "degenerate_count": self.degenerate_count,
        }


def chunk_schedule(trials: int, chunk: int = CHUNK_TRIALS) -> list[tuple[int, int]]:
    """(chunk index, chunk size) pairs covering ``trials``."""
    return [(i, min(chunk, trials - start)) for i, start in enumerate(range(0, trials, chunk))]


def _hit(exp: CoverageExperiment, row: np.ndarray, row2: np.ndarray | None) -> bool:
    x = Sample(row.tolist())
    truth = exp.state
    if exp.case == "mean-known-sigma":
        return interval_mean_known_sigma(x, exp.gamma, truth.sigma).contains(truth)
    if exp.case == "variance":
        return interval_variance(x, exp.gamma, exp.estimator).contains(truth)
    if exp.case == "variance-alpha-point":
        return interval_variance_alpha_point(x, exp.gamma).contains(truth)
    if exp.case == "mean-t":
        return interval_mean_t(x, exp.gamma).contains(truth.mu)
    other = exp.state2
    ts = TwoSample(x, Sample(row2.tolist()))
    return interval_mean_diff(ts, exp.gamma, truth.sigma, other.sigma).contains(truth.mu - other.mu)


def run_chunk(exp: CoverageExperiment, index: int, size: int) -> tuple[int, int]:
    """Run one chunk of trials; returns (hits, degenerate samples)."""
    rng = SplitMix64(derive_seed(exp.seed, index))
    xs = exp.state.mu + exp.state.sigma * rng.normal(size * exp.n).reshape(size, exp.n)
    ys = None
    if exp.case == "mean-diff":
        ys = exp.state2.mu + exp.state2.sigma * rng.normal(size * exp.m).reshape(size, exp.m)
    hits = degenerate = 0
    for j in range(size):
        try:
            hits += _hit(exp, xs[j], None if ys is None else ys[j])
        except DegenerateSampleError:
            degenerate += 1
    return hits, degenerate


def default_workers() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return min(4, os.cpu_count() or 1)
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise DomainError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def run_coverage(exp: CoverageExperiment, workers: int | None = None) -> CoverageReport:
    """Simulate ``exp.trials`` measurements and count domains hitting the truth."""
    schedule = chunk_schedule(exp.trials)
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(schedule) == 1:
        results = [run_chunk(exp, i, size) for i, size in schedule]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: run_chunk(exp, *job), schedule))
    hits = sum(h for h, _ in results)
    degenerate = sum(d for _, d in results)
    return CoverageReport(hits, exp.trials, exp.gamma, degenerate)
