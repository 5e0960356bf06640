"""
Command-line entry point.

    mcx analyze tasks.json --scheduler edf-vd --search acbfs --oracles all
    mcx graph tasks.json --bound 1000 --intermediary
    mcx generate --n 5 --t-min 5 --t-max 30 --p-hi 0.5 --u-target 0.85 --count 10 --seed 42
    mcx experiment configs/experiments/oracle_impact.yaml --set gen.count=5

Exit codes: 0 Safe, 1 Unsafe, 2 Inconclusive, 3 any error (message on stderr).
Logs go to stderr; stdout carries the command output only.
"""

import json
import sys
from typing import List, Optional

from loguru import logger
from omegaconf.errors import OmegaConfBaseException
import typer

from mcx_tools._src.experiments.runner import run_experiment
from mcx_tools._src.experiments.spec import load_experiment_spec
from mcx_tools._src.explorer.config import SearchConfig
from mcx_tools._src.explorer.graph import explore_graph
from mcx_tools._src.explorer.search import explore
from mcx_tools._src.generator.generate import GenParams, generate as generate_sets
from mcx_tools._src.generator.generate import write_report
from mcx_tools._src.model.io import load_taskset
from mcx_tools._src.utils.time import format_duration_ns, parse_duration
from mcx_tools._src.utils.workers import resolve_workers

ERROR_EXIT_CODE = 3

app = typer.Typer(add_completion=False, help="Exact mixed-criticality schedulability analysis.")


def configure_logging(verbose: bool = False) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "INFO")


def _fail(err: Exception) -> typer.Exit:
    logger.error(f"{type(err).__name__}: {err}")
    return typer.Exit(code=ERROR_EXIT_CODE)


def _write_or_echo(text: str, output: Optional[str]) -> None:
    if output is None:
        typer.echo(text, nl=False)
        return
    with open(output, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"Wrote {output}")


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging."),
):
    configure_logging(verbose)


@app.command()
def analyze(
    task_file: str = typer.Argument(..., help="Task-set JSON file."),
    scheduler: str = typer.Option("edf-vd", help="edf, edf-vd or lwlf."),
    search: str = typer.Option("acbfs", help="bfs or acbfs."),
    oracles: str = typer.Option("none", help="none, all or a comma-separated list."),
    max_states: Optional[int] = typer.Option(None, help="Bound on expanded states."),
    timeout: str = typer.Option("15m", help="Wall-time bound, e.g. 900, 30s, 15m."),
    workers: Optional[int] = typer.Option(None, help="Processes per layer [$MCX_WORKERS]."),
    witness: bool = typer.Option(False, help="Record the path to the failure."),
    periodic: bool = typer.Option(False, help="Periodic release model."),
    force: bool = typer.Option(False, help="Analyse even if due diligence fails."),
    output: Optional[str] = typer.Option(None, "--output", "-o", help="JSON file instead of stdout."),
):
    """Decides whether the scheduler can miss a deadline on the task set."""
    try:
        ts = load_taskset(task_file)
        cfg = SearchConfig(
            algorithm=search,
            scheduler=scheduler,
            oracles=oracles,
            max_states=max_states,
            max_duration=parse_duration(timeout),
            workers=resolve_workers(workers),
            witness=witness,
            periodic=periodic,
            force=force,
        )
        report = explore(ts, cfg)
    except (ValueError, OSError) as err:
        raise _fail(err) from None

    logger.info(
        f"{ts.name}: {report.outcome.value} after {report.visited} states "
        f"in {format_duration_ns(report.duration_ns)}"
    )
    _write_or_echo(json.dumps(report.to_dict(), indent=2) + "\n", output)
    raise typer.Exit(code=report.outcome.exit_code)


@app.command()
def graph(
    task_file: str = typer.Argument(..., help="Task-set JSON file."),
    scheduler: str = typer.Option("edf-vd", help="edf, edf-vd or lwlf."),
    bound: int = typer.Option(1000, help="Maximum number of expanded states."),
    periodic: bool = typer.Option(False, help="Periodic release model."),
    intermediary: bool = typer.Option(
        False, help="List the release, run and signal steps instead of composed edges."
    ),
    output: Optional[str] = typer.Option(None, "--output", "-o", help="Dump file instead of stdout."),
):
    """Dumps the automaton as an edge list."""
    try:
        ts = load_taskset(task_file)
        dump = explore_graph(
            ts, scheduler=scheduler, bound=bound, periodic=periodic, intermediary=intermediary
        )
    except (ValueError, OSError) as err:
        raise _fail(err) from None
    if dump.partial:
        logger.warning(f"Graph truncated after {bound} expanded states")
    _write_or_echo(dump.render(), output)


@app.command()
def generate(
    n: int = typer.Option(..., help="Tasks per set."),
    t_min: int = typer.Option(..., help="Smallest period."),
    t_max: int = typer.Option(..., help="Largest period."),
    p_hi: float = typer.Option(..., help="Probability that a task is HI."),
    u_target: float = typer.Option(..., help="Target average utilization."),
    count: int = typer.Option(1, help="Number of sets to accept."),
    seed: int = typer.Option(0, help="Seed."),
    max_attempts: Optional[int] = typer.Option(None, help="Retry cap (1000 * count)."),
    output_dir: str = typer.Option("tasksets", help="Directory for the JSON files."),
):
    """Generates random dual-criticality task sets and their manifest."""
    try:
        params = GenParams(
            n=n,
            t_min=t_min,
            t_max=t_max,
            p_hi=p_hi,
            u_target=u_target,
            count=count,
            seed=seed,
            max_attempts=max_attempts,
        )
        report = generate_sets(params)
        write_report(report, output_dir)
    except (ValueError, OSError) as err:
        raise _fail(err) from None
    typer.echo(json.dumps(report.manifest(), indent=2))


@app.command()
def experiment(
    spec_file: str = typer.Argument(..., help="Experiment YAML file."),
    overrides: Optional[List[str]] = typer.Option(
        None, "--set", help="Dotlist override, e.g. gen.count=5 (repeatable)."
    ),
    output_dir: Optional[str] = typer.Option(None, help="Overrides output_dir."),
    workers: Optional[int] = typer.Option(None, help="Parallel runs [$MCX_WORKERS]."),
    plot: bool = typer.Option(True, help="Write summary.svg."),
    progress: bool = typer.Option(True, help="Show a progress bar."),
):
    """Runs an experiment and writes raw.csv, summary.csv and summary.svg."""
    extra = list(overrides or [])
    if output_dir is not None:
        extra.append(f"output_dir={output_dir}")
    if workers is not None:
        extra.append(f"workers={workers}")
    if not plot:
        extra.append("plot=false")
    try:
        spec = load_experiment_spec(spec_file, extra)
        result = run_experiment(spec, write=True, progress=progress)
    except (ValueError, OSError, OmegaConfBaseException) as err:
        raise _fail(err) from None
    if not result.summary.empty:
        typer.echo(result.summary.to_string(index=False))
