"""
feasibility.py

Single-criticality EDF feasibility and the "due diligence" pre-check for
dual-criticality task sets.

Before a dual-criticality set is analysed, both derived single-criticality sets must
be feasible on one processor: (i) the HI tasks alone with C_i = C_i(HI), and (ii) all
tasks with C_i = C_i(LO). EDF is optimal on a uniprocessor, so feasibility is decided
with EDF: utilization <= 1 for implicit deadlines, the processor-demand criterion
otherwise.
"""

from dataclasses import dataclass
from fractions import Fraction
import math
from typing import Optional

from beartype.typing import Sequence

from beartype import beartype
from loguru import logger

from mcx_tools._src.model.tasks import Criticality, TaskSet

# (wcet, deadline, period)
SporadicJobs = Sequence[tuple[int, int, int]]


@dataclass(frozen=True)
class DueDiligence:
    passed: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.passed


def demand_bound(tasks: SporadicJobs, t: int) -> int:
    """Classic EDF demand of synchronous releases with deadlines in [0, t]."""
    return sum(
        max(0, (t - deadline) // period + 1) * wcet for wcet, deadline, period in tasks
    )


def edf_feasible(tasks: SporadicJobs) -> tuple[bool, Optional[str]]:
    """Exact uniprocessor EDF feasibility of a constrained-deadline sporadic set.

    Returns:
        tuple[bool, Optional[str]]: the verdict and, when infeasible, the reason
    """
    if not tasks:
        return True, None
    utilization = sum(Fraction(c, p) for c, _, p in tasks)
    if utilization > 1:
        return False, f"utilization {utilization} > 1"
    if all(d == p for _, d, p in tasks):
        return True, None

    # processor-demand criterion on every absolute deadline up to H + max(D)
    horizon = math.lcm(*(p for _, _, p in tasks)) + max(d for _, d, _ in tasks)
    checkpoints = sorted(
        {d + k * p for _, d, p in tasks for k in range((horizon - d) // p + 1)}
    )
    for t in checkpoints:
        demand = demand_bound(tasks, t)
        if demand > t:
            return False, f"demand {demand} exceeds {t} time units"
    return True, None


@beartype
def due_diligence(ts: TaskSet) -> DueDiligence:
    """Checks that both derived single-criticality task sets are EDF-feasible.

    Args:
        ts (TaskSet): a valid task set

    Returns:
        DueDiligence: truthy when both sets are feasible; otherwise carries the reason

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.TaskSet.from_tuples([(2, 3, 2, 2, "HI")])
    >>> bool(mcx.due_diligence(ts))
    False
    """
    hi_only = [
        (t.c_hi, t.deadline, t.period) for t in ts.tasks if t.level is Criticality.HI
    ]
    ok, reason = edf_feasible(hi_only)
    if not ok:
        logger.debug(f"Due diligence failed on HI tasks at C(HI): {reason}")
        return DueDiligence(False, f"HI tasks at C(HI): {reason}")

    lo_mode = [(t.c_lo, t.deadline, t.period) for t in ts.tasks]
    ok, reason = edf_feasible(lo_mode)
    if not ok:
        logger.debug(f"Due diligence failed on all tasks at C(LO): {reason}")
        return DueDiligence(False, f"all tasks at C(LO): {reason}")
    return DueDiligence(True)
