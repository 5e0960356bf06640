from mcx_tools._src.model.tasks import TaskSet
from mcx_tools._src.schedulers.base import Scheduler, SchedulerKind
from mcx_tools._src.schedulers.edf import EdfScheduler, EdfVdScheduler
from mcx_tools._src.schedulers.lwlf import LwlfScheduler

SCHEDULERS = {
    SchedulerKind.EDF: EdfScheduler,
    SchedulerKind.EDF_VD: EdfVdScheduler,
    SchedulerKind.LWLF: LwlfScheduler,
}


def build_scheduler(kind: "str | SchedulerKind", ts: TaskSet) -> Scheduler:
    """Instantiates a named scheduler for a task set.

    Args:
        kind (str | SchedulerKind): `edf`, `edf-vd` or `lwlf`
        ts (TaskSet): the task set

    Returns:
        Scheduler: a callable state -> task id (or None)

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.TaskSet.from_tuples([(1, 2, 2, 2, "HI"), (1, 1, 2, 2, "LO")])
    >>> sch = mcx.build_scheduler("edf-vd", ts)
    >>> sch(mcx.parse_state("LO[12,12]"))
    1
    """
    return SCHEDULERS[SchedulerKind.parse(kind)](ts)
