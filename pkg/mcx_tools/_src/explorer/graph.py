"""
graph.py

Develops the automaton as an explicit, labelled graph for inspection.

Dump format (UTF-8 text):

    # initial: LO[00,00]
    # states: <count>
    # partial: false
    LO[00,00] -> LO[00,00] [released={} ran=none theta=0]
    LO[00,00] -> HI[11,00] [released={1} ran=1 theta=0]
    ...

One line per edge, states in the debug rendering, sources in breadth-first order.

With `intermediary`, every composed edge is replaced by its release, run and
signal steps and the intermediate states S+ and S_rn are listed too:

    LO[00,00] -> LO[12,12] [release={1,2}]
    LO[12,12] -> LO[01,11] [run=1]
    LO[01,11] -> HI[11,01] [signal=1 theta=0]

Only composed states are expanded and counted against the bound.
"""

from dataclasses import dataclass, field
from typing import Union

from beartype import beartype
from loguru import logger

from mcx_tools._src.model.tasks import TaskSet, ensure_valid
from mcx_tools._src.schedulers.base import Scheduler, SchedulerKind
from mcx_tools._src.schedulers.factory import build_scheduler
from mcx_tools._src.semantics.automaton import Automaton
from mcx_tools._src.semantics.state import SystemState
from mcx_tools._src.semantics.transitions import StepLabel, TransitionLabel

Edge = tuple[SystemState, Union[TransitionLabel, StepLabel], SystemState]


@dataclass
class AutomatonGraph:
    initial: SystemState
    states: list[SystemState] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)
    partial: bool = False

    def render(self) -> str:
        lines = [
            f"# initial: {self.initial}",
            f"# states: {len(self.states)}",
            f"# partial: {str(self.partial).lower()}",
        ]
        lines.extend(f"{src} -> {dst} [{label}]" for src, label, dst in self.edges)
        return "\n".join(lines) + "\n"


@beartype
def explore_graph(
    ts: TaskSet,
    scheduler: str | SchedulerKind | Scheduler = SchedulerKind.EDF_VD,
    bound: int = 1000,
    periodic: bool = False,
    intermediary: bool = False,
) -> AutomatonGraph:
    """Breadth-first development of the automaton, expanding at most `bound` states.

    Args:
        ts (TaskSet): the task set
        scheduler (str | SchedulerKind | Scheduler): scheduler name or instance
        bound (int): maximum number of expanded states
        periodic (bool): periodic release model
        intermediary (bool): list the release, run and signal steps (each once)
            instead of the composed edges

    Returns:
        AutomatonGraph: states discovered and edges of the expanded states; `partial`
            when some discovered state was left unexpanded

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.TaskSet.from_tuples([])
    >>> print(mcx.explore_graph(ts).render(), end="")
    # initial: LO[]
    # states: 1
    # partial: false
    LO[] -> LO[] [released={} ran=none theta=0]
    """
    if bound < 0:
        raise ValueError(f"bound must be non-negative. User input: {bound}")
    ensure_valid(ts)
    if not isinstance(scheduler, Scheduler):
        scheduler = build_scheduler(scheduler, ts)
    automaton = Automaton(ts, scheduler, periodic=periodic)

    initial = automaton.initial
    graph = AutomatonGraph(initial=initial, states=[initial])
    listed = {initial}
    seen = {initial}
    steps_seen: set[Edge] = set()
    queue = [initial]
    head = 0
    while head < len(queue):
        if head >= bound:
            graph.partial = True
            break
        src = queue[head]
        head += 1
        if intermediary:
            for step in automaton.steps(src):
                if step in steps_seen:
                    continue
                steps_seen.add(step)
                graph.edges.append(step)
                for state in (step[0], step[2]):
                    if state not in listed:
                        listed.add(state)
                        graph.states.append(state)
        for label, dst in automaton.successors(src):
            if not intermediary:
                graph.edges.append((src, label, dst))
            if dst not in seen:
                seen.add(dst)
                queue.append(dst)
                if dst not in listed:
                    listed.add(dst)
                    graph.states.append(dst)
    logger.debug(
        f"Developed {head} of {len(graph.states)} states, {len(graph.edges)} edges"
    )
    return graph
