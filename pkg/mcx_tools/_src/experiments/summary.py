"""
summary.py

Summary tables computed from raw rows, one layout per experiment kind.

- bfs-vs-acbfs: per (u_target, scheduler, search, baseline_outcome) median visited,
  stored and duration, plus the median per-set visited ratio ACBFS/BFS.
- oracle-impact: per (scheduler, oracle_set, baseline_outcome) median avoided-state
  ratio 1 - visited/visited_base and speed-up ratio 1 - duration/duration_base,
  the base being ACBFS without oracles on the same set.
- scalability: per (n, t_max, scheduler, search) median duration and visited, and
  the number of runs that hit a limit.
- schedulability-curve: per (u_target, test) the ratio of sets proven schedulable.

`baseline_outcome` is the outcome of the reference run of the set (BFS for
bfs-vs-acbfs, ACBFS without oracles for oracle-impact), so medians can be split
between schedulable and unschedulable sets.
"""

import pandas as pd

from mcx_tools._src.experiments.spec import ExperimentKind

INCONCLUSIVE = "Inconclusive"
SAFE = "Safe"


def _nonzero(col: pd.Series) -> pd.Series:
    return col.where(col != 0)


def _with_baseline(raw: pd.DataFrame, base: pd.DataFrame) -> pd.DataFrame:
    base = base[["set_id", "scheduler", "outcome", "visited", "duration_ns"]].rename(
        columns={
            "outcome": "baseline_outcome",
            "visited": "visited_base",
            "duration_ns": "duration_base",
        }
    )
    return raw.merge(base, on=["set_id", "scheduler"], how="inner")


def summarize_bfs_vs_acbfs(raw: pd.DataFrame) -> pd.DataFrame:
    bfs = raw[raw["search"] == "bfs"]
    frame = _with_baseline(raw, bfs)
    summary = (
        frame.groupby(["u_target", "scheduler", "search", "baseline_outcome"])
        .agg(
            sets=("set_id", "nunique"),
            median_visited=("visited", "median"),
            median_stored=("stored", "median"),
            median_duration_ns=("duration_ns", "median"),
        )
        .reset_index()
    )
    acbfs = frame[frame["search"] == "acbfs"].copy()
    acbfs["visited_ratio"] = acbfs["visited"] / acbfs["visited_base"].pipe(_nonzero)
    ratios = (
        acbfs.groupby(["u_target", "scheduler", "baseline_outcome"])["visited_ratio"]
        .median()
        .rename("median_visited_ratio")
        .reset_index()
    )
    return summary.merge(
        ratios, on=["u_target", "scheduler", "baseline_outcome"], how="left"
    )


def summarize_oracle_impact(raw: pd.DataFrame) -> pd.DataFrame:
    explorations = raw[raw["search"] == "acbfs"]
    base = explorations[explorations["oracle_set"] == "none"]
    frame = _with_baseline(explorations, base)
    frame = frame[frame["baseline_outcome"] != INCONCLUSIVE].copy()
    frame["avoided_ratio"] = 1 - frame["visited"] / frame["visited_base"].pipe(_nonzero)
    frame["speedup_ratio"] = 1 - frame["duration_ns"] / frame["duration_base"].pipe(_nonzero)
    return (
        frame.groupby(["scheduler", "oracle_set", "baseline_outcome"])
        .agg(
            sets=("set_id", "nunique"),
            median_avoided_ratio=("avoided_ratio", "median"),
            max_avoided_ratio=("avoided_ratio", "max"),
            median_speedup_ratio=("speedup_ratio", "median"),
            median_visited=("visited", "median"),
        )
        .reset_index()
    )


def summarize_scalability(raw: pd.DataFrame) -> pd.DataFrame:
    frame = raw.assign(timed_out=(raw["outcome"] == INCONCLUSIVE).astype(int))
    return (
        frame.groupby(["n", "t_max", "scheduler", "search"])
        .agg(
            sets=("set_id", "nunique"),
            median_duration_ns=("duration_ns", "median"),
            median_visited=("visited", "median"),
            timeouts=("timed_out", "sum"),
        )
        .reset_index()
    )


def summarize_schedulability(raw: pd.DataFrame) -> pd.DataFrame:
    frame = raw.assign(
        test=raw["scheduler"],
        schedulable=(raw["outcome"] == SAFE).astype(int),
        inconclusive=(raw["outcome"] == INCONCLUSIVE).astype(int),
    )
    summary = (
        frame.groupby(["u_target", "test"])
        .agg(
            sets=("set_id", "nunique"),
            schedulable=("schedulable", "sum"),
            inconclusive=("inconclusive", "sum"),
        )
        .reset_index()
    )
    summary["ratio"] = summary["schedulable"] / summary["sets"]
    return summary


SUMMARIES = {
    ExperimentKind.BFS_VS_ACBFS: summarize_bfs_vs_acbfs,
    ExperimentKind.ORACLE_IMPACT: summarize_oracle_impact,
    ExperimentKind.SCALABILITY: summarize_scalability,
    ExperimentKind.SCHEDULABILITY_CURVE: summarize_schedulability,
}


def summarize(kind: "str | ExperimentKind", raw: pd.DataFrame) -> pd.DataFrame:
    """Summary table of an experiment kind, recomputable from the raw CSV alone."""
    if raw.empty:
        return pd.DataFrame()
    return SUMMARIES[ExperimentKind.parse(kind)](raw)
