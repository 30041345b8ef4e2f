"""Static report rendering: sensitivity curves and design_est draw
distributions as PNG figures, written next to their CSV exports."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .engine import DesignResult
from .priors import DesignEstResult, per_draw_csv
from .stats import InvalidParameterError

SENSITIVITY_HEADER = "n,power,type_s,type_m"


def sensitivity_csv(rows: list[tuple[int, DesignResult]]) -> str:
    lines = [SENSITIVITY_HEADER]
    for n, res in rows:
        type_m = "nan" if res.type_m is None else repr(float(res.type_m))
        lines.append(f"{n},{res.power!r},{res.type_s!r},{type_m}")
    return "\n".join(lines) + "\n"


def render_sensitivity(
    rows: list[tuple[int, DesignResult]], d: float, path: str
) -> None:
    """Three stacked panels: power, type M and type S against sample size."""
    ns = [n for n, _ in rows]
    power = [res.power for _, res in rows]
    type_m = [np.nan if res.type_m is None else res.type_m for _, res in rows]
    type_s = [res.type_s for _, res in rows]

    fig, axes = plt.subplots(3, 1, figsize=(7, 8), sharex=True)
    for ax, values, name, color in zip(
        axes, (power, type_m, type_s), ("Power", "Type M", "Type S"), ("C0", "C1", "C3")
    ):
        ax.plot(ns, values, marker="o", color=color)
        ax.set_ylabel(name)
        ax.grid(alpha=0.3)
    axes[0].set_title(f"Design analysis by sample size (d = {d:g})")
    axes[2].set_xlabel("n per group")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_design_est(result: DesignEstResult, path: str) -> None:
    """Histograms of the per-draw power, type S and type M distributions."""
    if result.per_draw is None:
        raise InvalidParameterError("design_est was run without return_data")
    table = result.per_draw
    fig, axes = plt.subplots(1, 3, figsize=(11, 3.4))
    for ax, col, name in zip(axes, (1, 2, 3), ("power", "type S", "type M")):
        values = table[:, col]
        values = values[~np.isnan(values)]
        ax.hist(values, bins=30, color="C0", edgecolor="white")
        ax.set_xlabel(name)
    axes[0].set_ylabel("draws")
    fig.suptitle(
        f"Per-draw distributions over the effect prior "
        f"(n1={result.n1}, n2={result.n2}, B={result.B}, B0={result.B0})"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_sensitivity_report(
    rows: list[tuple[int, DesignResult]], d: float, directory: str
) -> tuple[str, str]:
    """Write sensitivity.csv and sensitivity.png under `directory`."""
    os.makedirs(directory, exist_ok=True)
    csv_path = os.path.join(directory, "sensitivity.csv")
    fig_path = os.path.join(directory, "sensitivity.png")
    with open(csv_path, "w") as fh:
        fh.write(sensitivity_csv(rows))
    render_sensitivity(rows, d, fig_path)
    return csv_path, fig_path


def write_design_est_report(result: DesignEstResult, directory: str) -> tuple[str, str]:
    """Write design_est_draws.csv and design_est.png under `directory`."""
    os.makedirs(directory, exist_ok=True)
    csv_path = os.path.join(directory, "design_est_draws.csv")
    fig_path = os.path.join(directory, "design_est.png")
    with open(csv_path, "w") as fh:
        fh.write(per_draw_csv(result))
    render_design_est(result, fig_path)
    return csv_path, fig_path
