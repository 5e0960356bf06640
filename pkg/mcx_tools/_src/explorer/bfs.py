"""
bfs.py

Plain layered breadth-first reachability over the automaton.

    R_0 = N_0 = {v_0};  N_{i+1} = Succ(N_i) \\ R_i;  R_{i+1} = R_i U N_{i+1}

Each layer N_i is first checked for deadline misses (and enabled unsafe oracles),
then expanded. States flagged by an enabled safe oracle are kept but not expanded.
The search is Safe when a layer comes out empty.
"""

from collections import Counter
from typing import Optional

from beartype.typing import Callable

from beartype import beartype
from loguru import logger

from mcx_tools._src.explorer.common import (
    Budget,
    WitnessTracker,
    prepare,
    scheduler_name,
)
from mcx_tools._src.explorer.config import SearchAlgorithm, SearchConfig
from mcx_tools._src.explorer.report import DEADLINE_MISS, ExplorationReport, Outcome
from mcx_tools._src.explorer.workers import LayerExpander
from mcx_tools._src.model.tasks import TaskSet
from mcx_tools._src.oracles.oracles import first_safe, first_unsafe
from mcx_tools._src.schedulers.base import Scheduler
from mcx_tools._src.semantics.state import SystemState

LayerObserver = Callable[[int, list[SystemState], set[SystemState]], None]


@beartype
def bfs(
    ts: TaskSet,
    cfg: Optional[SearchConfig] = None,
    scheduler: Optional[Scheduler] = None,
    observer: Optional[LayerObserver] = None,
) -> ExplorationReport:
    """Decides schedulability by exhaustive breadth-first search.

    Args:
        ts (TaskSet): the task set
        cfg (SearchConfig, optional): search options; defaults to EDF-VD, no oracles
        scheduler (Scheduler, optional): overrides `cfg.scheduler`
        observer (Callable, optional): called as observer(i, N_i, R_i) before
            each layer is checked

    Returns:
        ExplorationReport: Safe, Unsafe or Inconclusive with counters

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.TaskSet.from_tuples([(1, 2, 2, 2, "HI"), (1, 1, 2, 2, "LO")])
    >>> mcx.bfs(ts).outcome.value
    'Safe'
    """
    cfg = SearchConfig(algorithm=SearchAlgorithm.BFS) if cfg is None else cfg
    automaton = prepare(ts, cfg, scheduler)
    budget = Budget(cfg.max_states, cfg.max_duration)
    witness = WitnessTracker(cfg.witness)
    pruned: Counter = Counter()

    report = ExplorationReport(
        outcome=Outcome.INCONCLUSIVE,
        algorithm=SearchAlgorithm.BFS.value,
        scheduler=scheduler_name(automaton),
        oracles=cfg.oracles.label,
        taskset=ts.name,
    )

    def finish(outcome: Outcome, **fields) -> ExplorationReport:
        report.outcome = outcome
        report.pruned = dict(pruned)
        report.duration_ns = budget.elapsed_ns()
        for key, value in fields.items():
            setattr(report, key, value)
        logger.debug(
            f"BFS {ts.name or ''} -> {outcome.value}: visited={report.visited} "
            f"stored={report.stored} layers={report.layers}"
        )
        return report

    initial = automaton.initial
    reached = {initial}
    layer = [initial]
    report.stored = 1

    kind = None if scheduler is not None else cfg.scheduler
    with LayerExpander(automaton, cfg.workers, kind) as expander:
        while True:
            if observer is not None:
                observer(report.layers, layer, reached)
            for s in layer:
                if automaton.is_failure(s):
                    return finish(
                        Outcome.UNSAFE, flagged_by=DEADLINE_MISS, witness=witness.path(s)
                    )
                flag = first_unsafe(ts, cfg.oracles, s)
                if flag is not None:
                    pruned[flag.value] += 1
                    return finish(
                        Outcome.UNSAFE, flagged_by=flag.value, witness=witness.path(s)
                    )
            if not layer:
                return finish(Outcome.SAFE)

            to_expand = []
            for s in layer:
                flag = first_safe(ts, cfg.oracles, s)
                if flag is not None:
                    pruned[flag.value] += 1
                else:
                    to_expand.append(s)
            limit = budget.exhausted(report.visited, len(to_expand))
            if limit is not None:
                return finish(Outcome.INCONCLUSIVE, limit=limit)

            next_layer = []
            for s, successors in zip(to_expand, expander.expand(to_expand)):
                for label, target in successors:
                    if target in reached:
                        continue
                    reached.add(target)
                    next_layer.append(target)
                    witness.record(target, s, label)
            report.visited += len(to_expand)
            report.stored = len(reached)
            report.layers += 1
            layer = sorted(next_layer, key=SystemState.encode)
