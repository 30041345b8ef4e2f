"""Design analysis for two-independent-group comparisons on Cohen's d:
statistical power, type M (exaggeration) and type S (sign) errors, estimated
by simulation and cross-checked against closed noncentral-t forms."""

from .effects import EffectInterpretation, benchmark_label, common_language, interpret_from_summaries, u3
from .engine import DesignResult, ReplicationOutcome, retrospective, sensitivity_curve, simulate_replications
from .oracle import (
    NoncentralSpec,
    exact_design,
    exact_power,
    exact_sample_size,
    exact_type_m,
    exact_type_s,
    noncentral_t_cdf,
)
from .priors import DesignEstResult, EffectPrior, build_prior, design_est, sample_prior
from .rng import RandomSource
from .search import ProspectiveResult, UnreachablePowerError, find_sample_size
from .stats import (
    InvalidParameterError,
    SampleSummary,
    TTestOutcome,
    central_t_cdf,
    central_t_quantile,
    cohens_d_estimate,
    draw_group,
    pooled_sd,
    truncated_normal_draw,
    two_sample_t,
)

__version__ = "0.1.0"

__all__ = [
    "DesignEstResult",
    "DesignResult",
    "EffectInterpretation",
    "EffectPrior",
    "InvalidParameterError",
    "NoncentralSpec",
    "ProspectiveResult",
    "RandomSource",
    "ReplicationOutcome",
    "SampleSummary",
    "TTestOutcome",
    "UnreachablePowerError",
    "benchmark_label",
    "build_prior",
    "central_t_cdf",
    "central_t_quantile",
    "cohens_d_estimate",
    "common_language",
    "design_est",
    "draw_group",
    "exact_design",
    "exact_power",
    "exact_sample_size",
    "exact_type_m",
    "exact_type_s",
    "find_sample_size",
    "interpret_from_summaries",
    "noncentral_t_cdf",
    "pooled_sd",
    "retrospective",
    "sample_prior",
    "sensitivity_curve",
    "simulate_replications",
    "truncated_normal_draw",
    "two_sample_t",
    "u3",
]
