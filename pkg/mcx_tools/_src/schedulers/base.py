"""
base.py

The scheduler contract: a deterministic, memoryless function from a state to the task
to run (an active task id) or None. It may only depend on cri and on the (nat, rct)
of active tasks.
"""

from enum import Enum
from typing import Callable, Optional

from mcx_tools._src.model.tasks import TaskSet
from mcx_tools._src.semantics.state import SystemState


class SchedulerKind(str, Enum):
    EDF = "edf"
    EDF_VD = "edf-vd"
    LWLF = "lwlf"

    @classmethod
    def parse(cls, value: "str | SchedulerKind") -> "SchedulerKind":
        if isinstance(value, SchedulerKind):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            msg = "Unrecognized scheduler. "
            msg += f"Must be one of {[k.value for k in cls]}. User input: {value}"
            raise ValueError(msg) from None


class Scheduler:
    """A scheduler bound to a task set. Subclasses implement `select`."""

    kind: Optional[SchedulerKind] = None
    deterministic: bool = True

    def __init__(self, ts: TaskSet):
        self.ts = ts

    @property
    def name(self) -> str:
        return self.kind.value if self.kind is not None else type(self).__name__

    def select(self, s: SystemState) -> Optional[int]:
        raise NotImplementedError

    def __call__(self, s: SystemState) -> Optional[int]:
        return self.select(s)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, n={self.ts.n})"


class FunctionScheduler(Scheduler):
    """Wraps a plain callable as a scheduler hook.

    Hooks are trusted to honour the contract only when they declare
    `deterministic=True`; the antichain search refuses the others.
    """

    def __init__(
        self,
        ts: TaskSet,
        fn: Callable[[SystemState], Optional[int]],
        name: str = "custom",
        deterministic: bool = False,
    ):
        super().__init__(ts)
        self.fn = fn
        self._name = name
        self.deterministic = deterministic

    @property
    def name(self) -> str:
        return self._name

    def select(self, s: SystemState) -> Optional[int]:
        return self.fn(s)
