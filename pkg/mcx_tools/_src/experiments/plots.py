import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd

from mcx_tools._src.experiments.spec import ExperimentKind


def _plot_bfs_vs_acbfs(ax, summary: pd.DataFrame) -> None:
    for (sch, search), group in summary.groupby(["scheduler", "search"]):
        curve = group.groupby("u_target")["median_visited"].median()
        ax.plot(curve.index, curve.values, marker="o", label=f"{sch} {search}")
    ax.set_yscale("log")
    ax.set_xlabel("U*")
    ax.set_ylabel("median visited states")


def _plot_oracle_impact(ax, summary: pd.DataFrame) -> None:
    frame = summary[summary["oracle_set"] != "none"]
    labels = [
        f"{r.scheduler} {r.oracle_set} ({r.baseline_outcome})"
        for r in frame.itertuples()
    ]
    ax.barh(labels, frame["median_avoided_ratio"].fillna(0))
    ax.set_xlabel("median avoided-state ratio")


def _plot_scalability(ax, summary: pd.DataFrame) -> None:
    for (sch, search, t_max), group in summary.groupby(["scheduler", "search", "t_max"]):
        ax.plot(
            group["n"],
            group["median_duration_ns"] / 1e9,
            marker="o",
            label=f"{sch} {search} Tmax={t_max}",
        )
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("median duration (s)")


def _plot_schedulability(ax, summary: pd.DataFrame) -> None:
    for test, group in summary.groupby("test"):
        ax.plot(group["u_target"], group["ratio"], marker="o", label=str(test))
    ax.set_ylim(-0.05, 1.05)
    ax.set_xlabel("U*")
    ax.set_ylabel("schedulable ratio")


PLOTS = {
    ExperimentKind.BFS_VS_ACBFS: _plot_bfs_vs_acbfs,
    ExperimentKind.ORACLE_IMPACT: _plot_oracle_impact,
    ExperimentKind.SCALABILITY: _plot_scalability,
    ExperimentKind.SCHEDULABILITY_CURVE: _plot_schedulability,
}


def plot_summary(kind: "str | ExperimentKind", summary: pd.DataFrame, path: str) -> str:
    """Draws the summary table of an experiment kind and saves it as SVG."""
    kind = ExperimentKind.parse(kind)
    fig, ax = plt.subplots(figsize=(6, 4), dpi=100)
    try:
        PLOTS[kind](ax, summary)
        ax.set_title(kind.value)
        if ax.get_legend_handles_labels()[0]:
            ax.legend(fontsize="small")
        fig.tight_layout()
        fig.savefig(path, format="svg")
    finally:
        plt.close(fig)
    return path
