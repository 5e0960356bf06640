"""
acbfs.py

Antichain breadth-first search with safe and unsafe oracles.

    N~_0 = R~_0 = {v_0} \\ dc(Safe)
    repeat:
        if N~_i meets uc(Unsafe) (or contains a deadline miss): return Unsafe
        if N~_i is empty: return Safe
        N~_{i+1} = Max(Succ(N~_i) \\ dc(R~_i U Safe))
        R~_{i+1} = Max(R~_i U N~_{i+1})

R~ and N~ are antichains for the idle-tasks preorder, so only maximal states are
stored and expanded. Membership in dc(Safe) and uc(Unsafe) is decided by evaluating
the oracle predicates on the state itself; this relies on safe oracles being
downward closed and unsafe oracles upward closed.

The preorder is only a simulation for deterministic schedulers, so scheduler hooks
that do not declare themselves deterministic are refused.
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
from mcx_tools._src.explorer.report import (
    DEADLINE_MISS,
    SIMULATION,
    ExplorationReport,
    Outcome,
)
from mcx_tools._src.explorer.workers import LayerExpander
from mcx_tools._src.model.tasks import TaskSet
from mcx_tools._src.oracles.oracles import first_safe, first_unsafe
from mcx_tools._src.schedulers.base import Scheduler
from mcx_tools._src.semantics.state import SystemState
from mcx_tools._src.simulation.antichain import Antichain

AntichainObserver = Callable[[int, list[SystemState], Antichain], None]


@beartype
def acbfs(
    ts: TaskSet,
    cfg: Optional[SearchConfig] = None,
    scheduler: Optional[Scheduler] = None,
    observer: Optional[AntichainObserver] = None,
) -> ExplorationReport:
    """Decides schedulability with the antichain search.

    Args:
        ts (TaskSet): the task set
        cfg (SearchConfig, optional): search options; defaults to EDF-VD, no oracles
        scheduler (Scheduler, optional): overrides `cfg.scheduler`; must be
            deterministic
        observer (Callable, optional): called as observer(i, N~_i, R~_i) at the start
            of every iteration

    Returns:
        ExplorationReport: same outcome as `bfs` on the same inputs

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.TaskSet.from_tuples([(1, 2, 2, 2, "HI"), (1, 1, 2, 2, "LO")])
    >>> mcx.acbfs(ts, mcx.SearchConfig(oracles="all")).outcome.value
    'Safe'
    """
    cfg = SearchConfig(algorithm=SearchAlgorithm.ACBFS) if cfg is None else cfg
    automaton = prepare(ts, cfg, scheduler)
    if not getattr(automaton.scheduler, "deterministic", False):
        msg = "The antichain search needs a deterministic, memoryless scheduler. "
        msg += f"User input: {scheduler_name(automaton)}"
        raise ValueError(msg)

    budget = Budget(cfg.max_states, cfg.max_duration)
    witness = WitnessTracker(cfg.witness)
    pruned: Counter = Counter()
    report = ExplorationReport(
        outcome=Outcome.INCONCLUSIVE,
        algorithm=SearchAlgorithm.ACBFS.value,
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
            f"ACBFS {ts.name or ''} -> {outcome.value}: visited={report.visited} "
            f"stored={report.stored} layers={report.layers}"
        )
        return report

    initial = automaton.initial
    flag = first_safe(ts, cfg.oracles, initial)
    if flag is not None:
        pruned[flag.value] += 1
        frontier: list[SystemState] = []
    else:
        frontier = [initial]
    reached = Antichain(frontier)
    report.stored = len(reached)

    kind = None if scheduler is not None else cfg.scheduler
    with LayerExpander(automaton, cfg.workers, kind) as expander:
        while True:
            if observer is not None:
                observer(report.layers, frontier, reached)
            for s in frontier:
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
            if not frontier:
                return finish(Outcome.SAFE)

            limit = budget.exhausted(report.visited, len(frontier))
            if limit is not None:
                return finish(Outcome.INCONCLUSIVE, limit=limit)

            next_frontier = Antichain()
            for s, successors in zip(frontier, expander.expand(frontier)):
                for label, target in successors:
                    # R~_i is the antichain before this layer is merged
                    if reached.covers(target):
                        pruned[SIMULATION] += 1
                        continue
                    flag = first_safe(ts, cfg.oracles, target)
                    if flag is not None:
                        pruned[flag.value] += 1
                        continue
                    result = next_frontier.insert(target)
                    if result.absorbed:
                        pruned[SIMULATION] += 1
                        continue
                    pruned[SIMULATION] += len(result.evicted)
                    witness.record(target, s, label)

            report.visited += len(frontier)
            frontier = next_frontier.states()
            for s in frontier:
                reached.insert(s)
            report.stored = max(report.stored, len(reached))
            report.layers += 1
