"""Numeric substrate: normal/Student-t distribution functions, the pooled
two-sample t-test, Cohen's d from group summaries, and the samplers used by
the simulation engine.

All tests are two-sided with pooled variance (the generative model draws
both groups with unit standard deviation, which makes the pooled test exact).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .rng import RandomSource


class InvalidParameterError(ValueError):
    """An argument is outside the domain an operation supports."""


def normal_cdf(x):
    return special.ndtr(x)


def normal_quantile(p):
    """Inverse standard normal CDF; p must lie strictly inside (0, 1)."""
    p = np.asarray(p, dtype=float)
    if np.any((p <= 0.0) | (p >= 1.0)):
        raise InvalidParameterError("normal_quantile requires 0 < p < 1")
    out = special.ndtri(p)
    return float(out) if out.ndim == 0 else out


def central_t_cdf(x: float, df: int) -> float:
    """CDF of the central Student t distribution with df >= 1."""
    if df < 1:
        raise InvalidParameterError(f"df must be >= 1, got {df}")
    return float(special.stdtr(df, x))


def central_t_quantile(p: float, df: int) -> float:
    """Inverse of central_t_cdf, accurate to well below 1e-8 round trip."""
    if df < 1:
        raise InvalidParameterError(f"df must be >= 1, got {df}")
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"quantile level must be in (0, 1), got {p}")
    return float(special.stdtrit(df, p))


@dataclass(frozen=True)
class SampleSummary:
    """Sufficient statistics for one group: size, mean, sample SD."""

    n: int
    mean: float
    sd: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InvalidParameterError(f"group size must be an integer >= 2, got {self.n}")
        if not self.sd > 0:
            raise InvalidParameterError(f"group sd must be > 0, got {self.sd}")


@dataclass(frozen=True)
class TTestOutcome:
    t: float
    df: int
    p_value: float
    d_hat: float
    reject: bool


def pooled_sd(a: SampleSummary, b: SampleSummary) -> float:
    """Square root of the df-weighted average of the two sample variances."""
    df = a.n + b.n - 2
    if df <= 0:
        raise InvalidParameterError("pooled sd needs n1 + n2 - 2 > 0")
    return math.sqrt(((a.n - 1) * a.sd**2 + (b.n - 1) * b.sd**2) / df)


def cohens_d_estimate(a: SampleSummary, b: SampleSummary) -> float:
    """Standardized mean difference (positive when group `a` is higher)."""
    return (a.mean - b.mean) / pooled_sd(a, b)


def two_sample_t(a: SampleSummary, b: SampleSummary, alpha: float = 0.05) -> TTestOutcome:
    """Pooled-variance two-sided Student t-test from group summaries.

    Returns the t statistic, df = n1 + n2 - 2, the two-sided p-value, the
    standardized effect estimate (which equals t * sqrt(1/n1 + 1/n2)
    exactly), and whether p < alpha.
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidParameterError(f"alpha must be in (0, 1), got {alpha}")
    df = a.n + b.n - 2
    scale = math.sqrt(1.0 / a.n + 1.0 / b.n)
    t = (a.mean - b.mean) / (pooled_sd(a, b) * scale)
    # 2 * upper tail, evaluated on the negative side for accuracy
    p = 2.0 * central_t_cdf(-abs(t), df)
    return TTestOutcome(t=t, df=df, p_value=p, d_hat=t * scale, reject=p < alpha)


def draw_group(n: int, mean: float, sd: float, rng: RandomSource) -> np.ndarray:
    """`n` independent normal draws; deterministic for a given stream."""
    if int(n) != n or n < 2:
        raise InvalidParameterError(f"group size must be an integer >= 2, got {n}")
    if not sd > 0:
        raise InvalidParameterError(f"sd must be > 0, got {sd}")
    return rng.generator().normal(mean, sd, int(n))


def truncated_normal_draw(
    lower: float,
    upper: float,
    mu: float,
    sigma: float,
    rng: RandomSource,
    size: int | None = None,
):
    """Draw from a normal(mu, sigma) restricted to [lower, upper].

    Uses the inverse-CDF transform (uniform on [Phi_lo, Phi_hi] mapped back
    through the normal quantile): exact, no rejection loop, and a fixed
    number of uniforms per draw so substreams stay aligned.

    Returns a float when `size` is None, else an ndarray of that length.
    """
    if not lower < upper:
        raise InvalidParameterError(f"need lower < upper, got [{lower}, {upper}]")
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be > 0, got {sigma}")
    p_lo = special.ndtr((lower - mu) / sigma)
    p_hi = special.ndtr((upper - mu) / sigma)
    gen = rng.generator()
    u = p_lo + (p_hi - p_lo) * gen.random(1 if size is None else size)
    values = np.clip(mu + sigma * special.ndtri(u), lower, upper)
    return float(values[0]) if size is None else values
