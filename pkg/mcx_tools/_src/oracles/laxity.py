"""
laxity.py

Laxity-style quantities of active tasks.

- laxity(ts, s, i) = ttd - rct
- worst_laxity(ts, s, i) = laxity - (C_i(L_i) - C_i(cri))

The worst laxity assumes the current job may still be granted its HI budget, so it is
at most the laxity and equal to it in HI mode and for LO tasks.
"""

from mcx_tools._src.model.tasks import TaskSet
from mcx_tools._src.semantics.state import SystemState, ttd


def _require_active(s: SystemState, i: int) -> None:
    if s.rct[i - 1] <= 0:
        msg = "Laxity is only defined on active tasks (rct > 0). "
        msg += f"User input: task {i} with rct={s.rct[i - 1]}"
        raise ValueError(msg)


def laxity(ts: TaskSet, s: SystemState, i: int) -> int:
    _require_active(s, i)
    return ttd(ts, s, i) - s.rct[i - 1]


def worst_laxity(ts: TaskSet, s: SystemState, i: int) -> int:
    _require_active(s, i)
    bonus = ts.c_max[i - 1] - ts.wcets(s.cri)[i - 1]
    return ttd(ts, s, i) - s.rct[i - 1] - bonus


def laxities(ts: TaskSet, s: SystemState) -> list[int]:
    """Laxities of every active task, in task-id order."""
    return [
        n - off - r for n, r, off in zip(s.nat, s.rct, ts.offsets) if r > 0
    ]


def worst_laxities(ts: TaskSet, s: SystemState) -> list[int]:
    """Worst laxities of every active task, in task-id order."""
    budgets = ts.wcets(s.cri)
    return [
        n - off - r - (c_max - c)
        for n, r, off, c, c_max in zip(s.nat, s.rct, ts.offsets, budgets, ts.c_max)
        if r > 0
    ]
