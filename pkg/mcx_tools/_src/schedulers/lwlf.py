"""Least-worst-laxity-first: run the active task with the smallest worst laxity."""

from typing import Optional

from mcx_tools._src.model.tasks import TaskSet
from mcx_tools._src.oracles.laxity import worst_laxity
from mcx_tools._src.schedulers.base import Scheduler, SchedulerKind
from mcx_tools._src.semantics.state import SystemState


def lwlf(ts: TaskSet, s: SystemState) -> Optional[int]:
    best, best_key = None, None
    for i, r in enumerate(s.rct, start=1):
        if r == 0:
            continue
        key = worst_laxity(ts, s, i)
        if best is None or key < best_key:
            best, best_key = i, key
    return best


class LwlfScheduler(Scheduler):
    kind = SchedulerKind.LWLF

    def select(self, s: SystemState) -> Optional[int]:
        return lwlf(self.ts, s)
