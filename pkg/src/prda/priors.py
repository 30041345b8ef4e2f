"""Effect-size priors and the hierarchical retrospective analysis.

Instead of a single plausible effect, the analyst gives an interval the
effect can reasonably occupy, with either a flat (uniform) or a doubly
truncated normal density over it. The truncated normal is centered on the
interval midpoint with standard deviation k times the interval length
(k = 1/6 by default; 1/10 is nearly an untruncated normal, larger k puts
more weight near the bounds).

`design_est` then runs one simulated design analysis per effect size drawn
from the prior and averages the three indices over draws. Type M and type S
always refer back to the interval center, the single most plausible value.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .engine import DesignResult, simulate_replications
from .rng import RandomSource
from .stats import InvalidParameterError, truncated_normal_draw

DEFAULT_K = 1.0 / 6.0


@dataclass(frozen=True)
class EffectPrior:
    """Point value, uniform interval, or doubly truncated normal over d."""

    kind: str  # "point" | "uniform" | "truncated_normal"
    value: float | None = None
    lower: float | None = None
    upper: float | None = None
    k: float | None = None

    @property
    def center(self) -> float:
        if self.kind == "point":
            return float(self.value)
        return (self.lower + self.upper) / 2.0

    @property
    def sigma(self) -> float | None:
        if self.kind != "truncated_normal":
            return None
        return self.k * (self.upper - self.lower)


def build_prior(
    value: float | None = None,
    limits: tuple[float, float] | None = None,
    distribution: str = "uniform",
    k: float = DEFAULT_K,
) -> EffectPrior:
    """Validate and assemble an EffectPrior.

    Exactly one of `value` (point prior) or `limits` (interval prior) must
    be given; `distribution` and `k` only apply to interval priors.
    """
    if (value is None) == (limits is None):
        raise InvalidParameterError("supply exactly one of a point value or interval limits")
    if value is not None:
        if value == 0:
            raise InvalidParameterError("a point effect of 0 admits no type M/S analysis")
        return EffectPrior(kind="point", value=float(value))
    lower, upper = float(limits[0]), float(limits[1])
    if not lower < upper:
        raise InvalidParameterError(f"need lower < upper, got [{lower}, {upper}]")
    if distribution == "uniform":
        return EffectPrior(kind="uniform", lower=lower, upper=upper)
    if distribution == "normal":
        if not k > 0:
            raise InvalidParameterError(f"k must be > 0, got {k}")
        return EffectPrior(kind="truncated_normal", lower=lower, upper=upper, k=float(k))
    raise InvalidParameterError(f"distribution must be 'uniform' or 'normal', got {distribution!r}")


def sample_prior(prior: EffectPrior, count: int, rng: RandomSource) -> np.ndarray:
    """`count` effect-size draws from the prior (constant for point priors)."""
    if count < 1:
        raise InvalidParameterError(f"count must be >= 1, got {count}")
    if prior.kind == "point":
        return np.full(count, prior.value, dtype=float)
    if prior.kind == "uniform":
        u = rng.generator().random(count)
        return prior.lower + (prior.upper - prior.lower) * u
    return truncated_normal_draw(
        prior.lower, prior.upper, prior.center, prior.sigma, rng, size=count
    )


@dataclass(frozen=True)
class DesignEstResult:
    """Mean power/type S/type M over prior draws, plus the per-draw table.

    `type_m` averages only draws where it is defined (some inner runs may
    have no significant replicate at small B); `n_undefined_type_m` counts
    the excluded draws. `per_draw` has columns d_drawn, power, type_s,
    type_m (NaN when undefined) and is present only when requested.
    """

    power: float
    type_s: float
    type_m: float | None
    n_undefined_type_m: int
    B: int
    B0: int
    alpha: float
    n1: int
    n2: int
    prior: EffectPrior
    per_draw: np.ndarray | None = None


PER_DRAW_HEADER = "d_drawn,power,type_s,type_m"


def design_est(
    n1: int,
    n2: int,
    prior: EffectPrior,
    alpha: float = 0.05,
    B: int = 500,
    B0: int = 500,
    return_data: bool = False,
    seed: int = 0,
    *,
    workers: int = 1,
) -> DesignEstResult:
    """Retrospective design analysis under an effect-size prior.

    For each of B0 draws from the prior, runs a B-replicate design analysis
    with the drawn effect as the generating truth and the prior center as
    the reference, then averages the indices over draws. A point prior
    collapses the hierarchy to a single B-replicate run.
    """
    if n1 < 2 or n2 < 2:
        raise InvalidParameterError("group sizes must be >= 2")
    if B0 < 1:
        raise InvalidParameterError(f"B0 must be >= 1, got {B0}")
    if prior.center == 0:
        raise InvalidParameterError("prior centered at 0 admits no type M/S analysis")

    job = RandomSource(seed).substream("est")
    reference = prior.center

    if prior.kind == "point":
        draws = np.array([prior.value])
    else:
        draws = sample_prior(prior, B0, job.substream("prior"))

    def run(i: int) -> DesignResult:
        return simulate_replications(
            float(draws[i]), n1, n2, B, alpha, reference, job.substream("draw", i)
        )

    if workers > 1 and len(draws) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(len(draws))))
    else:
        results = [run(i) for i in range(len(draws))]

    table = np.empty((len(draws), 4))
    for i, res in enumerate(results):
        table[i] = (draws[i], res.power, res.type_s, np.nan if res.type_m is None else res.type_m)

    defined = ~np.isnan(table[:, 3])
    return DesignEstResult(
        power=float(table[:, 1].mean()),
        type_s=float(table[:, 2].mean()),
        type_m=float(table[defined, 3].mean()) if defined.any() else None,
        n_undefined_type_m=int((~defined).sum()),
        B=B,
        B0=B0,
        alpha=alpha,
        n1=n1,
        n2=n2,
        prior=prior,
        per_draw=table if return_data else None,
    )


def per_draw_csv(result: DesignEstResult) -> str:
    """The per-draw table as CSV text (header d_drawn,power,type_s,type_m)."""
    if result.per_draw is None:
        raise InvalidParameterError("design_est was run without return_data")
    lines = [PER_DRAW_HEADER]
    for row in result.per_draw:
        lines.append(",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"
