"""Effect-size computation and interpretation helpers for two-group studies:
Cohen's d with a confidence interval, the common-language effect size, the
U3 non-overlap measure, and the conventional small/medium/large labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .stats import (
    InvalidParameterError,
    SampleSummary,
    cohens_d_estimate,
    normal_cdf,
    normal_quantile,
)

# conventional anchors: small .2, medium .5, large .8
_BANDS = ((0.2, "negligible"), (0.5, "small"), (0.8, "medium"))


@dataclass(frozen=True)
class EffectInterpretation:
    d: float
    ci_low: float
    ci_high: float
    level: float
    cl: float
    u3: float
    label: str


def common_language(d: float) -> float:
    """Probability a random member of the higher group beats a random member
    of the other group."""
    return float(normal_cdf(d / math.sqrt(2.0)))


def u3(d: float) -> float:
    """Share of the higher group lying above the other group's mean."""
    return float(normal_cdf(d))


def benchmark_label(d: float) -> str:
    """Band |d| against the conventional anchors.

    The anchors are coarse conventions, not field-specific truths; output
    text should present them as relative guidance only.
    """
    magnitude = abs(d)
    for bound, label in _BANDS:
        if magnitude < bound:
            return label
    return "large"


def interpret_from_summaries(
    a: SampleSummary, b: SampleSummary, level: float = 0.95
) -> EffectInterpretation:
    """Cohen's d with a large-sample confidence interval, CL, U3 and label.

    The interval uses the usual normal approximation with variance
    (n1+n2)/(n1*n2) + d^2 / (2*(n1+n2)); treat it as approximate.
    """
    if not 0.0 < level < 1.0:
        raise InvalidParameterError(f"confidence level must be in (0, 1), got {level}")
    d = cohens_d_estimate(a, b)
    variance = (a.n + b.n) / (a.n * b.n) + d * d / (2.0 * (a.n + b.n))
    z = normal_quantile((1.0 + level) / 2.0)
    half = z * math.sqrt(variance)
    return EffectInterpretation(
        d=d,
        ci_low=d - half,
        ci_high=d + half,
        level=level,
        cl=common_language(d),
        u3=u3(d),
        label=benchmark_label(d),
    )
