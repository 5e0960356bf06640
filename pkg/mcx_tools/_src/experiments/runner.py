"""
runner.py

Plans and executes the runs of an experiment and writes its tables.

One raw row per (task set, run). Rows carry the generation parameters, the point
seed and the generation attempt of their task set, so each row can be replayed.

Raw CSV columns:
    set_id, n, t_min, t_max, p_hi, u_target, seed, index, attempt,
    scheduler, search, oracle_set, outcome, flagged_by, limit,
    visited, stored, layers, duration_ns, pruned_<oracle>..., pruned_simulation
"""

from dataclasses import dataclass, field
import multiprocessing
import os
import time
from typing import Optional

from loguru import logger
import pandas as pd
from tqdm import tqdm

from mcx_tools._src.experiments.corpus import CorpusEntry, build_corpus, regenerate
from mcx_tools._src.experiments.plots import plot_summary
from mcx_tools._src.experiments.spec import ExperimentKind, ExperimentSpec, spec_to_yaml
from mcx_tools._src.experiments.summary import summarize
from mcx_tools._src.explorer.config import SearchAlgorithm, SearchConfig
from mcx_tools._src.explorer.report import SIMULATION
from mcx_tools._src.explorer.search import explore
from mcx_tools._src.generator.generate import GenParams
from mcx_tools._src.oracles.oracles import EVALUATION_ORDER, OracleSet
from mcx_tools._src.schedulers.base import SchedulerKind
from mcx_tools._src.schedulers.edf import edf_vd_sufficient_test
from mcx_tools._src.utils.workers import resolve_workers

SUFFICIENT_TEST = "sufficient-test"
SUFFICIENT_SCHEDULER = "edf-vd-sufficient"


def prune_column(name: str) -> str:
    return "pruned_" + name.replace("-", "_")


PRUNE_COLUMNS = [prune_column(k.value) for k in EVALUATION_ORDER] + [
    prune_column(SIMULATION)
]
RAW_COLUMNS = [
    "set_id",
    "n",
    "t_min",
    "t_max",
    "p_hi",
    "u_target",
    "seed",
    "index",
    "attempt",
    "scheduler",
    "search",
    "oracle_set",
    "outcome",
    "flagged_by",
    "limit",
    "visited",
    "stored",
    "layers",
    "duration_ns",
    *PRUNE_COLUMNS,
]
SORT_KEYS = ["n", "t_max", "u_target", "index", "scheduler", "search", "oracle_set"]


@dataclass(frozen=True)
class RunConfig:
    scheduler: str
    search: str
    oracles: str = "none"

    @property
    def is_sufficient_test(self) -> bool:
        return self.search == SUFFICIENT_TEST


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    raw: pd.DataFrame
    summary: pd.DataFrame
    files: list[str] = field(default_factory=list)


def plan_runs(spec: ExperimentSpec, corpus: list[CorpusEntry]) -> list[tuple[CorpusEntry, RunConfig]]:
    """Every (task set, run configuration) pair of the experiment, in a fixed order."""
    runs = [
        RunConfig(
            scheduler=SchedulerKind.parse(sch).value,
            search=SearchAlgorithm.parse(search).value,
            oracles=OracleSet.parse(oracles).label,
        )
        for sch in spec.schedulers
        for search in spec.searches
        for oracles in spec.oracles
    ]
    kind = spec.experiment_kind
    if kind is ExperimentKind.ORACLE_IMPACT:
        for sch in sorted({r.scheduler for r in runs}):
            baseline = RunConfig(sch, SearchAlgorithm.ACBFS.value, "none")
            if baseline not in runs:
                logger.debug(f"Adding the no-oracle ACBFS baseline for {sch}")
                runs.insert(0, baseline)
    if kind is ExperimentKind.SCHEDULABILITY_CURVE:
        runs.append(RunConfig(SUFFICIENT_SCHEDULER, SUFFICIENT_TEST))
    runs = list(dict.fromkeys(runs))
    return [(entry, run) for entry in corpus for run in runs]


def _base_row(entry: CorpusEntry, run: RunConfig) -> dict:
    p = entry.params
    row = {
        "set_id": entry.set_id,
        "n": p.n,
        "t_min": p.t_min,
        "t_max": p.t_max,
        "p_hi": p.p_hi,
        "u_target": p.u_target,
        "seed": p.seed,
        "index": entry.index,
        "attempt": entry.attempt,
        "scheduler": run.scheduler,
        "search": run.search,
        "oracle_set": run.oracles,
        "flagged_by": None,
        "limit": None,
        "visited": 0,
        "stored": 0,
        "layers": 0,
    }
    row.update(dict.fromkeys(PRUNE_COLUMNS, 0))
    return row


def execute_run(
    entry: CorpusEntry,
    run: RunConfig,
    timeout: Optional[float] = None,
    max_states: Optional[int] = None,
) -> dict:
    """Runs one exploration (or the EDF-VD sufficient test) and returns its raw row."""
    row = _base_row(entry, run)
    started = time.perf_counter_ns()
    if run.is_sufficient_test:
        row["outcome"] = "Safe" if edf_vd_sufficient_test(entry.taskset) else "Unproven"
        row["duration_ns"] = time.perf_counter_ns() - started
        return row

    cfg = SearchConfig(
        algorithm=run.search,
        scheduler=run.scheduler,
        oracles=run.oracles,
        max_states=max_states,
        max_duration=timeout,
    )
    try:
        report = explore(entry.taskset, cfg)
    except ValueError as err:
        logger.warning(f"{entry.set_id} {run}: {err}")
        row.update(outcome="Error", flagged_by=str(err))
        row["duration_ns"] = time.perf_counter_ns() - started
        return row
    if report.limit is not None:
        logger.warning(f"{entry.set_id} {run}: inconclusive ({report.limit})")
    row.update(
        outcome=report.outcome.value,
        flagged_by=report.flagged_by,
        limit=report.limit,
        visited=report.visited,
        stored=report.stored,
        layers=report.layers,
        duration_ns=report.duration_ns,
    )
    for name, count in report.pruned.items():
        row[prune_column(name)] = count
    return row


def _execute_job(job: tuple) -> dict:
    entry, run, timeout, max_states = job
    return execute_run(entry, run, timeout, max_states)


def replay_row(row: dict, timeout: Optional[float] = None) -> dict:
    """Regenerates the task set of a raw row and re-executes its run."""
    params = GenParams(
        n=int(row["n"]),
        t_min=int(row["t_min"]),
        t_max=int(row["t_max"]),
        p_hi=float(row["p_hi"]),
        u_target=float(row["u_target"]),
        seed=int(row["seed"]),
    )
    ts = regenerate(params, int(row["attempt"]))
    if ts is None:
        raise ValueError(f"Attempt {row['attempt']} of {row['set_id']} yields no task set")
    entry = CorpusEntry(row["set_id"], params, int(row["index"]), int(row["attempt"]), ts)
    run = RunConfig(row["scheduler"], row["search"], row["oracle_set"])
    return execute_run(entry, run, timeout)


def run_experiment(
    spec: ExperimentSpec, write: bool = True, progress: bool = True
) -> ExperimentResult:
    """Generates the corpus, executes every planned run and summarizes.

    Args:
        spec (ExperimentSpec): the experiment
        write (bool): write raw.csv, summary.csv, spec.yaml (and summary.svg when
            `spec.plot`) under `<output_dir>/<label>/`
        progress (bool): show a progress bar

    Returns:
        ExperimentResult: raw rows, summary table and written files
    """
    spec.check()
    workers = resolve_workers(spec.workers)
    corpus = build_corpus(spec)
    plan = plan_runs(spec, corpus)
    timeout = spec.timeout_seconds
    jobs = [(entry, run, timeout, spec.max_states) for entry, run in plan]
    logger.info(
        f"Experiment {spec.label}: {len(jobs)} runs on {len(corpus)} sets, "
        f"{workers} worker(s)"
    )

    pbar = tqdm(total=len(jobs), disable=not progress, desc=spec.label)
    rows = []
    if workers > 1:
        with multiprocessing.Pool(workers) as p:
            for row in p.imap(_execute_job, jobs):
                rows.append(row)
                pbar.update(1)
    else:
        for job in jobs:
            rows.append(_execute_job(job))
            pbar.update(1)
    pbar.close()

    raw = pd.DataFrame(rows, columns=RAW_COLUMNS)
    raw = raw.sort_values(SORT_KEYS, kind="mergesort").reset_index(drop=True)
    summary = summarize(spec.experiment_kind, raw)
    result = ExperimentResult(spec=spec, raw=raw, summary=summary)

    if write:
        out_dir = os.path.join(spec.output_dir, spec.label)
        os.makedirs(out_dir, exist_ok=True)
        raw_path = os.path.join(out_dir, "raw.csv")
        summary_path = os.path.join(out_dir, "summary.csv")
        spec_path = os.path.join(out_dir, "spec.yaml")
        raw.to_csv(raw_path, index=False)
        summary.to_csv(summary_path, index=False)
        with open(spec_path, "w", encoding="utf-8") as f:
            f.write(spec_to_yaml(spec))
        result.files.extend([raw_path, summary_path, spec_path])
        if spec.plot and not summary.empty:
            svg_path = os.path.join(out_dir, "summary.svg")
            plot_summary(spec.experiment_kind, summary, svg_path)
            result.files.append(svg_path)
        logger.info(f"Wrote {', '.join(result.files)}")
    return result
