"""
tasks.py

Static representation of dual-criticality sporadic task sets.

Classes:
- Criticality: the two criticality levels, ordered LO < HI.
- Task: one sporadic task <<C(LO), C(HI)>, D, T, L>.
- TaskSet: an ordered, immutable collection of tasks. List order is the
    tie-breaking order used by every scheduler.
- UtilizationSummary: the exact (rational) utilization aggregates of a task set.

Functions:
- utilization_summary(ts: TaskSet) -> UtilizationSummary
- validate(ts: TaskSet) -> list[Violation]
- ensure_valid(ts: TaskSet) -> None

Note: all utilization math uses fractions.Fraction so that generator drop rules and
the EDF-VD discount factor are reproducible across platforms.
"""

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from functools import cached_property
import math
from typing import Optional

from beartype.typing import Iterable

from beartype import beartype


class Criticality(IntEnum):
    LO = 0
    HI = 1

    @classmethod
    def parse(cls, value: "str | Criticality") -> "Criticality":
        if isinstance(value, Criticality):
            return value
        try:
            return cls[str(value).strip().upper()]
        except KeyError:
            msg = "Unrecognized criticality level. "
            msg += f"Must be 'LO' or 'HI'. User input: {value}"
            raise ValueError(msg) from None


@dataclass(frozen=True)
class Task:
    """A dual-criticality sporadic task.

    Construction never fails on inconsistent parameters: `validate` reports them.

    Args:
        id (int): 1-based index, stable within its task set
        c_lo (int): worst-case execution time at LO criticality
        c_hi (int): worst-case execution time at HI criticality
        deadline (int): relative deadline D
        period (int): minimum inter-arrival time T
        level (Criticality): criticality level L
    """

    id: int
    c_lo: int
    c_hi: int
    deadline: int
    period: int
    level: Criticality

    def wcet(self, alpha: Criticality) -> int:
        """C_i(alpha)."""
        return self.c_hi if alpha is Criticality.HI else self.c_lo

    @property
    def c_max(self) -> int:
        """C_i(L_i), the largest budget a job of this task can get."""
        return self.wcet(self.level)

    @property
    def offset(self) -> int:
        """T_i - D_i; ttd = nat - offset."""
        return self.period - self.deadline


@dataclass(frozen=True)
class TaskSet:
    tasks: tuple[Task, ...] = ()
    name: Optional[str] = None

    @classmethod
    def from_tuples(
        cls,
        rows: Iterable[tuple[int, int, int, int, "str | Criticality"]],
        name: Optional[str] = None,
    ) -> "TaskSet":
        """Builds a task set from (c_lo, c_hi, deadline, period, level) rows.

        Ids are assigned 1..n in row order.

        Usage:

        >>> import mcx_tools as mcx
        >>> ts = mcx.TaskSet.from_tuples([(1, 2, 2, 2, "HI"), (1, 1, 2, 2, "LO")])
        >>> ts.n
        2
        """
        tasks = tuple(
            Task(
                id=idx,
                c_lo=c_lo,
                c_hi=c_hi,
                deadline=deadline,
                period=period,
                level=Criticality.parse(level),
            )
            for idx, (c_lo, c_hi, deadline, period, level) in enumerate(rows, start=1)
        )
        return cls(tasks=tasks, name=name)

    def __len__(self) -> int:
        return len(self.tasks)

    def __iter__(self):
        return iter(self.tasks)

    def task(self, task_id: int) -> Task:
        if not 1 <= task_id <= len(self.tasks):
            msg = f"Unknown task id. Must be in 1..{len(self.tasks)}. "
            msg += f"User input: {task_id}"
            raise ValueError(msg)
        return self.tasks[task_id - 1]

    @property
    def n(self) -> int:
        return len(self.tasks)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(t.id for t in self.tasks)

    @cached_property
    def implicit_deadlines(self) -> bool:
        return all(t.deadline == t.period for t in self.tasks)

    @cached_property
    def hyperperiod(self) -> int:
        return math.lcm(*(t.period for t in self.tasks)) if self.tasks else 1

    # per-task vectors, indexed by id - 1, used on the exploration hot path
    @cached_property
    def periods(self) -> tuple[int, ...]:
        return tuple(t.period for t in self.tasks)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        return tuple(t.offset for t in self.tasks)

    @cached_property
    def levels(self) -> tuple[Criticality, ...]:
        return tuple(t.level for t in self.tasks)

    @cached_property
    def c_lo(self) -> tuple[int, ...]:
        return tuple(t.c_lo for t in self.tasks)

    @cached_property
    def c_hi(self) -> tuple[int, ...]:
        return tuple(t.c_hi for t in self.tasks)

    @cached_property
    def c_max(self) -> tuple[int, ...]:
        return tuple(t.c_max for t in self.tasks)

    def wcets(self, alpha: Criticality) -> tuple[int, ...]:
        return self.c_hi if alpha is Criticality.HI else self.c_lo


@dataclass(frozen=True)
class UtilizationSummary:
    u_lo: Fraction
    u_hi: Fraction
    u_lo_of_lo: Fraction
    u_lo_of_hi: Fraction
    u_hi_of_hi: Fraction
    u_avg: Fraction


@beartype
def utilization_summary(ts: TaskSet) -> UtilizationSummary:
    """Exact utilization aggregates of a task set.

    U^alpha(tau) sums C_i(alpha)/T_i over the tasks with L_i >= alpha, and
    U^alpha_beta(tau) over the tasks with L_i = beta.

    Args:
        ts (TaskSet): the task set

    Returns:
        UtilizationSummary: the five aggregates plus U^avg

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.TaskSet.from_tuples([(1, 2, 2, 2, "HI"), (1, 1, 2, 2, "LO")])
    >>> mcx.utilization_summary(ts).u_avg
    Fraction(1, 1)
    """
    u_lo_of_lo = Fraction(0)
    u_lo_of_hi = Fraction(0)
    u_hi_of_hi = Fraction(0)
    for t in ts.tasks:
        if t.level is Criticality.HI:
            u_lo_of_hi += Fraction(t.c_lo, t.period)
            u_hi_of_hi += Fraction(t.c_hi, t.period)
        else:
            u_lo_of_lo += Fraction(t.c_lo, t.period)
    u_lo = u_lo_of_lo + u_lo_of_hi
    u_hi = u_hi_of_hi
    return UtilizationSummary(
        u_lo=u_lo,
        u_hi=u_hi,
        u_lo_of_lo=u_lo_of_lo,
        u_lo_of_hi=u_lo_of_hi,
        u_hi_of_hi=u_hi_of_hi,
        u_avg=(u_lo + u_hi) / 2,
    )


@dataclass(frozen=True)
class Violation:
    task_id: Optional[int]
    field: str
    message: str = field(compare=False)

    def __str__(self) -> str:
        where = "task set" if self.task_id is None else f"task {self.task_id}"
        return f"{where}: {self.field}: {self.message}"


@beartype
def validate(ts: TaskSet) -> list[Violation]:
    """Returns every broken Task / TaskSet invariant (empty when ts is valid)."""
    violations = []
    for position, t in enumerate(ts.tasks, start=1):
        if t.id != position:
            violations.append(
                Violation(t.id, "id", f"ids must be 1..n without gaps, got {t.id} at position {position}")
            )
        for name in ("c_lo", "c_hi", "deadline", "period"):
            value = getattr(t, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                violations.append(Violation(t.id, name, f"must be a positive integer, got {value!r}"))
        if t.level is Criticality.HI and not t.c_lo <= t.c_hi:
            violations.append(Violation(t.id, "c_lo", "HI task requires c_lo <= c_hi"))
        if t.level is Criticality.LO and t.c_lo != t.c_hi:
            violations.append(Violation(t.id, "c_hi", "LO task requires c_lo == c_hi"))
        if not t.deadline <= t.period:
            violations.append(Violation(t.id, "deadline", "requires deadline <= period"))
    return violations


def ensure_valid(ts: TaskSet) -> None:
    violations = validate(ts)
    if violations:
        msg = "Invalid task set"
        msg += f" {ts.name!r}" if ts.name else ""
        msg += ": " + "; ".join(str(v) for v in violations)
        raise ValueError(msg)
