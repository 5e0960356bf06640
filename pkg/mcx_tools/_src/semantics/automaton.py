from dataclasses import dataclass
from typing import Callable, Optional

from mcx_tools._src.model.tasks import TaskSet
from mcx_tools._src.semantics.state import (
    SystemState,
    initial_state,
    is_deadline_miss,
)
from mcx_tools._src.semantics.transitions import (
    Step,
    TransitionLabel,
    intermediary_steps,
    successors,
)


@dataclass(frozen=True)
class Automaton:
    """A task set bound to a scheduler: the graph both searches explore.

    Args:
        ts (TaskSet): the task set
        scheduler (Callable): maps a state to the task id to run, or None
        periodic (bool): release every eligible task instead of every subset
    """

    ts: TaskSet
    scheduler: Callable[[SystemState], Optional[int]]
    periodic: bool = False

    @property
    def initial(self) -> SystemState:
        return initial_state(self.ts)

    def successors(
        self, s: SystemState, dedup: bool = True
    ) -> list[tuple[TransitionLabel, SystemState]]:
        return successors(
            self.ts, s, self.scheduler, dedup=dedup, periodic=self.periodic
        )

    def steps(self, s: SystemState) -> list[Step]:
        return intermediary_steps(self.ts, s, self.scheduler, periodic=self.periodic)

    def is_failure(self, s: SystemState) -> bool:
        return is_deadline_miss(self.ts, s)
