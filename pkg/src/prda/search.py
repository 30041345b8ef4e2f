"""Prospective design analysis: find the smallest per-group sample size whose
power reaches a target, then report that design's full risk profile.

The search has two stages. A coarse integer bisection over the range, using
B-replicate power estimates on substreams shared across all probed sizes
(common random numbers), brackets the answer. A local walk then settles the
boundary with pooled high-precision estimates: `tol` sets how finely power
needs resolving, and the pooled batch count is sized so the standard error
of those deciding estimates is at most tol/4. Power is monotone in n, so
both stages are well posed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .engine import BLOCK, DesignResult, _run_block
from .rng import RandomSource
from .stats import InvalidParameterError, central_t_quantile


class UnreachablePowerError(RuntimeError):
    """The target power cannot be reached inside the search range.

    Carries the design analysis achieved at the range's upper bound.
    """

    def __init__(self, target_power: float, n_upper: int, achieved: DesignResult):
        self.target_power = target_power
        self.n_upper = n_upper
        self.achieved = achieved
        super().__init__(
            "target power %.4f unreachable in range: n = %d achieves %.4f"
            % (target_power, n_upper, achieved.power)
        )


@dataclass(frozen=True)
class ProspectiveResult:
    n_per_group: int
    achieved: DesignResult
    target_power: float
    search_range: tuple[int, int]
    tol: float


class _PowerProbe:
    """Pooled MC power estimates at any n, on a fixed substream family."""

    def __init__(self, d, alpha, reps, stream: RandomSource, workers: int):
        self.d = d
        self.alpha = alpha
        self.reps = reps
        self.stream = stream
        self.workers = workers
        self.cache: dict[int, tuple[int, int, float]] = {}

    def stats(self, n: int) -> tuple[int, int, float]:
        """(n_significant, n_wrong_sign, sum |d_hat| over significant)."""
        if n not in self.cache:
            df = 2 * n - 2
            t_crit = central_t_quantile(1.0 - self.alpha / 2.0, df)
            ref_sign = 1.0 if self.d > 0 else -1.0
            sizes = [BLOCK] * (self.reps // BLOCK)
            if self.reps % BLOCK:
                sizes.append(self.reps % BLOCK)

            def job(i: int):
                gen = self.stream.substream("block", i).generator()
                stats, _ = _run_block(
                    gen, sizes[i], self.d, n, n, df, t_crit, ref_sign, False
                )
                return stats

            if self.workers > 1 and len(sizes) > 1:
                with ThreadPoolExecutor(max_workers=self.workers) as pool:
                    parts = list(pool.map(job, range(len(sizes))))
            else:
                parts = [job(i) for i in range(len(sizes))]
            n_sig = sum(p[0] for p in parts)
            n_wrong = sum(p[1] for p in parts)
            abs_sum = math.fsum(p[2] for p in parts)
            self.cache[n] = (n_sig, n_wrong, abs_sum)
        return self.cache[n]

    def power(self, n: int) -> float:
        return self.stats(n)[0] / self.reps

    def result(self, n: int) -> DesignResult:
        n_sig, n_wrong, abs_sum = self.stats(n)
        return DesignResult(
            power=n_sig / self.reps,
            type_s=n_wrong / n_sig if n_sig else 0.0,
            type_m=(abs_sum / n_sig) / abs(self.d) if n_sig else None,
            n_significant=n_sig,
            B=self.reps,
            alpha=self.alpha,
            d_true=self.d,
            d_reference=self.d,
        )


def find_sample_size(
    d: float,
    target_power: float,
    alpha: float = 0.05,
    n_range: tuple[int, int] = (2, 1000),
    tol: float = 0.005,
    B: int = 10000,
    seed: int = 0,
    *,
    workers: int = 1,
) -> ProspectiveResult:
    """Smallest per-group n in `n_range` whose estimated power reaches
    `target_power`, with the full design analysis at that n.

    Raises UnreachablePowerError (carrying the result at the upper bound)
    when even the top of the range estimates below target_power - tol.
    """
    if d == 0:
        raise InvalidParameterError("d must be nonzero")
    if not 0.0 < target_power < 1.0:
        raise InvalidParameterError(f"target power must be in (0, 1), got {target_power}")
    if not 0.0 < tol < 1.0:
        raise InvalidParameterError(f"tol must be in (0, 1), got {tol}")
    lo, hi = int(n_range[0]), int(n_range[1])
    if lo < 2 or hi <= lo:
        raise InvalidParameterError(f"search range must satisfy 2 <= lo < hi, got {n_range}")
    if B < 1:
        raise InvalidParameterError(f"B must be >= 1, got {B}")

    base = RandomSource(seed)
    coarse = _PowerProbe(d, alpha, B, base.substream("search"), workers)
    # deciding estimates: SE <= tol/4, clipped to [B, 64B] replications
    fine_reps = int(np.clip(math.ceil(16.0 * target_power * (1 - target_power) / tol**2), B, 64 * B))
    fine = _PowerProbe(d, alpha, fine_reps, base.substream("refine"), workers)

    # reachability: cheap screen at B replications, precise check only when
    # the top of the range is anywhere near the threshold
    margin = 4.0 * math.sqrt(target_power * (1 - target_power) / B)
    if coarse.power(hi) < target_power - tol + margin:
        if fine.power(hi) < target_power - tol:
            raise UnreachablePowerError(target_power, hi, fine.result(hi))

    # stage 1: bracket by bisection against target - tol at B replications
    if coarse.power(lo) >= target_power - tol:
        candidate = lo
    else:
        b_lo, b_hi = lo, hi
        while b_hi - b_lo > 1:
            mid = (b_lo + b_hi) // 2
            if coarse.power(mid) >= target_power - tol:
                b_hi = mid
            else:
                b_lo = mid
        candidate = b_hi

    # stage 2: settle the boundary with the pooled high-precision probe
    n = candidate
    if fine.power(n) >= target_power:
        while n - 1 >= lo and fine.power(n - 1) >= target_power:
            n -= 1
    else:
        while n + 1 <= hi and fine.power(n) < target_power:
            n += 1

    return ProspectiveResult(
        n_per_group=n,
        achieved=fine.result(n),
        target_power=target_power,
        search_range=(lo, hi),
        tol=tol,
    )
