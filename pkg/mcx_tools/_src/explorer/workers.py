"""
workers.py

Layer expansion, serial or over a process pool.

A layer is a sorted list of states; expanding it returns, for each state in order,
its successor list. Worker processes rebuild the automaton once in the pool
initializer, so only states and successor lists cross process boundaries. Results are
gathered in input order, so the outcome never depends on the worker count.
"""

import math
import multiprocessing
from typing import Optional

from loguru import logger

from mcx_tools._src.model.tasks import TaskSet
from mcx_tools._src.schedulers.base import SchedulerKind
from mcx_tools._src.schedulers.factory import build_scheduler
from mcx_tools._src.semantics.automaton import Automaton
from mcx_tools._src.semantics.state import SystemState
from mcx_tools._src.semantics.transitions import TransitionLabel

Expansion = list[tuple[TransitionLabel, SystemState]]

_WORKER_AUTOMATON: Optional[Automaton] = None


def _init_worker(ts: TaskSet, kind: SchedulerKind, periodic: bool) -> None:
    global _WORKER_AUTOMATON
    _WORKER_AUTOMATON = Automaton(ts, build_scheduler(kind, ts), periodic=periodic)


def _expand_chunk(states: list[SystemState]) -> list[Expansion]:
    return [_WORKER_AUTOMATON.successors(s) for s in states]


class LayerExpander:
    """Expands layers with `workers` processes (or in-process when workers = 1).

    Use as a context manager so the pool is torn down with the search.
    """

    def __init__(
        self,
        automaton: Automaton,
        workers: int = 1,
        kind: Optional[SchedulerKind] = None,
    ):
        self.automaton = automaton
        self.workers = workers
        self.kind = kind
        self._pool = None
        if workers > 1 and kind is None:
            logger.warning(
                "Custom scheduler hooks cannot be shipped to worker processes; "
                "expanding layers in-process"
            )
            self.workers = 1

    def __enter__(self) -> "LayerExpander":
        if self.workers > 1:
            logger.debug(f"Starting a pool of {self.workers} expansion workers")
            self._pool = multiprocessing.Pool(
                self.workers,
                initializer=_init_worker,
                initargs=(self.automaton.ts, self.kind, self.automaton.periodic),
            )
        return self

    def __exit__(self, *exc) -> None:
        if self._pool is not None:
            self._pool.terminate()
            self._pool.join()
            self._pool = None

    def expand(self, states: list[SystemState]) -> list[Expansion]:
        if self._pool is None or len(states) < 2 * self.workers:
            return [self.automaton.successors(s) for s in states]
        size = math.ceil(len(states) / (4 * self.workers))
        chunks = [states[k : k + size] for k in range(0, len(states), size)]
        out: list[Expansion] = []
        for part in self._pool.map(_expand_chunk, chunks):
            out.extend(part)
        return out
