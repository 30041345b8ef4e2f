"""Monte Carlo design analysis for the two-independent-group comparison.

The procedure: fix a plausible effect size, replicate the experiment B times
(two normal groups, unit SD, means d and 0), test each replicate with the
pooled two-sided t-test, and summarize three quantities over the replicates:

* power      - share of replicates reaching significance,
* type S     - share of significant replicates whose estimate has the wrong
               sign relative to the reference effect,
* type M     - mean |significant effect estimate| divided by |reference|
               (the exaggeration ratio).

Replications are evaluated in fixed-size blocks, each on its own named
substream, and block results are reduced in block order, so results are
identical for any worker count or scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import special

from .rng import RandomSource
from .stats import InvalidParameterError, central_t_quantile

BLOCK = 1000  # replications per substream block


@dataclass(frozen=True)
class ReplicationOutcome:
    """One simulated experiment: estimate, p-value, and its classification."""

    d_hat: float
    p_value: float
    significant: bool
    wrong_sign: bool


@dataclass(frozen=True)
class DesignResult:
    """The (power, type S, type M) triple plus the run's defining inputs.

    `type_m` is None when no replicate was significant (possible at tiny B);
    `type_s` is 0 in that case, with `n_significant` = 0 so consumers can
    judge how much the ratios are worth.
    """

    power: float
    type_s: float
    type_m: float | None
    n_significant: int
    B: int
    alpha: float
    d_true: float
    d_reference: float
    replications: tuple[ReplicationOutcome, ...] | None = None


def _block_sizes(B: int) -> list[int]:
    sizes = [BLOCK] * (B // BLOCK)
    if B % BLOCK:
        sizes.append(B % BLOCK)
    return sizes


def _run_block(
    gen: np.random.Generator,
    size: int,
    d_true: float,
    n1: int,
    n2: int,
    df: int,
    t_crit: float,
    ref_sign: float,
    keep: bool,
):
    a = gen.normal(d_true, 1.0, (size, n1))
    b = gen.normal(0.0, 1.0, (size, n2))
    var_a = a.var(axis=1, ddof=1)
    var_b = b.var(axis=1, ddof=1)
    pooled_var = ((n1 - 1) * var_a + (n2 - 1) * var_b) / df
    scale = np.sqrt(1.0 / n1 + 1.0 / n2)
    t = (a.mean(axis=1) - b.mean(axis=1)) / np.sqrt(pooled_var * scale * scale)
    d_hat = t * scale
    significant = np.abs(t) > t_crit
    wrong = significant & (np.sign(d_hat) != ref_sign)
    n_sig = int(significant.sum())
    stats = (n_sig, int(wrong.sum()), float(np.abs(d_hat[significant]).sum()))
    if not keep:
        return stats, None
    p = 2.0 * special.stdtr(df, -np.abs(t))
    return stats, (d_hat, p, significant, wrong)


def simulate_replications(
    d_true: float,
    n1: int,
    n2: int,
    B: int,
    alpha: float,
    d_reference: float,
    rng: RandomSource,
    *,
    workers: int = 1,
    keep_replications: bool = False,
) -> DesignResult:
    """Replicate the two-group experiment B times under effect `d_true`.

    Parameters
    ----------
    d_true : true standardized mean difference generating the data.
    n1, n2 : per-group sizes (>= 2).
    B : number of replicates (>= 1).
    alpha : two-sided significance level.
    d_reference : the plausible effect the error rates refer to; its sign
        anchors type S and its magnitude is the type M denominator.
    rng : stream to draw from; blocks use child substreams of it.
    workers : worker threads for the replicate blocks; any value yields
        identical results.
    keep_replications : also return per-replicate outcomes (costly in
        memory for large B).
    """
    if n1 < 2 or n2 < 2:
        raise InvalidParameterError("group sizes must be >= 2")
    if B < 1:
        raise InvalidParameterError(f"B must be >= 1, got {B}")
    if not 0.0 < alpha < 1.0:
        raise InvalidParameterError(f"alpha must be in (0, 1), got {alpha}")
    if d_reference == 0:
        raise InvalidParameterError("d_reference must be nonzero (type M denominator)")

    df = n1 + n2 - 2
    t_crit = central_t_quantile(1.0 - alpha / 2.0, df)
    ref_sign = 1.0 if d_reference > 0 else -1.0
    sizes = _block_sizes(B)

    def job(i: int):
        gen = rng.substream("block", i).generator()
        return _run_block(gen, sizes[i], d_true, n1, n2, df, t_crit, ref_sign, keep_replications)

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(job, range(len(sizes))))
    else:
        blocks = [job(i) for i in range(len(sizes))]

    n_sig = 0
    n_wrong = 0
    abs_sum = 0.0
    for (s, w, m), _ in blocks:  # fixed block order keeps sums deterministic
        n_sig += s
        n_wrong += w
        abs_sum += m

    outcomes = None
    if keep_replications:
        outcomes = tuple(
            ReplicationOutcome(float(dh), float(pv), bool(sg), bool(wr))
            for _, arrays in blocks
            for dh, pv, sg, wr in zip(*arrays)
        )

    power = n_sig / B
    type_s = n_wrong / n_sig if n_sig else 0.0
    type_m = (abs_sum / n_sig) / abs(d_reference) if n_sig else None
    return DesignResult(
        power=power,
        type_s=type_s,
        type_m=type_m,
        n_significant=n_sig,
        B=B,
        alpha=alpha,
        d_true=d_true,
        d_reference=d_reference,
        replications=outcomes,
    )


def _design_stream(seed: int, n_per_group: int) -> RandomSource:
    # keyed by n so a one-point sensitivity grid reproduces retrospective()
    return RandomSource(seed).substream("design", n_per_group)


def retrospective(
    d: float,
    n_per_group: int,
    alpha: float = 0.05,
    B: int = 10000,
    seed: int = 0,
    *,
    workers: int = 1,
    keep_replications: bool = False,
) -> DesignResult:
    """Design analysis of an equal-n study against plausible effect `d`."""
    if d == 0:
        raise InvalidParameterError("d must be nonzero")
    return simulate_replications(
        d,
        n_per_group,
        n_per_group,
        B,
        alpha,
        d_reference=d,
        rng=_design_stream(seed, n_per_group),
        workers=workers,
        keep_replications=keep_replications,
    )


def sensitivity_curve(
    d: float,
    n_grid: list[int],
    alpha: float = 0.05,
    B: int = 10000,
    seed: int = 0,
    *,
    workers: int = 1,
) -> list[tuple[int, DesignResult]]:
    """One design analysis per grid point, each on an independent substream."""
    if not n_grid:
        raise InvalidParameterError("n_grid must be nonempty")
    if d == 0:
        raise InvalidParameterError("d must be nonzero")
    out = []
    for n in n_grid:
        if n < 2:
            raise InvalidParameterError(f"grid sizes must be >= 2, got {n}")
        result = simulate_replications(
            d, n, n, B, alpha, d_reference=d, rng=_design_stream(seed, n), workers=workers
        )
        out.append((int(n), result))
    return out
