"""Non-interactive figure rendering for the report subcommands."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .transition import PathTrace, TransitionDecomposition


def render_path_figure(trace: PathTrace, out_path: str) -> str:
    """Write a two-panel PNG of a traced transition; returns the path."""
    m = len(trace.weights)
    fig, (ax_top, ax_bot) = plt.subplots(
        2, 1, figsize=(7.0, 6.5), sharex=True
    )
    for i in range(m):
        ax_top.plot(
            trace.lambdas,
            [p[i] for p in trace.points],
            label=f"input {i + 1}",
        )
        ax_top.plot(
            trace.lambdas,
            [u[i] for u in trace.dual_points],
            linestyle="--",
            label=f"dual {i + 1}",
        )
    ax_top.set_ylabel("coordinate")
    ax_top.legend(loc="best", fontsize=8)
    ax_top.grid(True, alpha=0.3)

    ax_bot.plot(trace.lambdas, trace.cumulative_cost, color="tab:red")
    ax_bot.set_xlabel("path position")
    ax_bot.set_ylabel("accumulated cost")
    ax_bot.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def render_decomposition_figure(
    decomp: TransitionDecomposition, out_path: str
) -> str:
    """Write a bar-chart PNG of a cost decomposition; returns the path."""
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    labels = ("total", "term1", "term2", "delta")
    values = (decomp.total, decomp.term1, decomp.term2, decomp.delta)
    colors = ("tab:gray", "tab:blue", "tab:green", "tab:orange")
    ax.bar(labels, values, color=colors)
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.axhline(
        decomp.via, color="tab:red", linestyle="--", linewidth=1.0,
        label="recombined",
    )
    ax.set_ylabel("cost")
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
