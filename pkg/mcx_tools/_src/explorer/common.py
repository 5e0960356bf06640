"""
common.py

Plumbing shared by the two searches: pre-checks, scheduler binding, limits and
witness bookkeeping.
"""

from dataclasses import dataclass, field
import time
from typing import Optional

from loguru import logger

from mcx_tools._src.model.feasibility import due_diligence
from mcx_tools._src.model.tasks import TaskSet, ensure_valid
from mcx_tools._src.schedulers.base import Scheduler
from mcx_tools._src.schedulers.factory import build_scheduler
from mcx_tools._src.explorer.config import SearchConfig
from mcx_tools._src.explorer.report import WitnessStep
from mcx_tools._src.semantics.automaton import Automaton
from mcx_tools._src.semantics.state import SystemState
from mcx_tools._src.semantics.transitions import TransitionLabel


class DueDiligenceError(ValueError):
    """The task set fails due diligence and the analysis was not forced."""


def prepare(
    ts: TaskSet, cfg: SearchConfig, scheduler: Optional[Scheduler] = None
) -> Automaton:
    """Validates the task set, runs due diligence and binds the scheduler."""
    ensure_valid(ts)
    verdict = due_diligence(ts)
    if not verdict:
        if not cfg.force:
            msg = "Task set fails due diligence"
            msg += f" ({verdict.reason}). Use force to analyse it anyway."
            raise DueDiligenceError(msg)
        logger.warning(f"Analysing despite failed due diligence: {verdict.reason}")
    if scheduler is None:
        scheduler = build_scheduler(cfg.scheduler, ts)
    return Automaton(ts, scheduler, periodic=cfg.periodic)


def scheduler_name(automaton: Automaton) -> str:
    return getattr(automaton.scheduler, "name", type(automaton.scheduler).__name__)


@dataclass
class Budget:
    """Tracks the state and wall-time limits of one search."""

    max_states: Optional[int] = None
    max_duration: Optional[float] = None
    started: int = field(default_factory=time.perf_counter_ns)

    def elapsed_ns(self) -> int:
        return time.perf_counter_ns() - self.started

    def exhausted(self, visited: int, upcoming: int) -> Optional[str]:
        """Name of the limit that forbids expanding `upcoming` more states, if any."""
        if self.max_states is not None and visited + upcoming > self.max_states:
            return "max-states"
        if self.max_duration is not None and self.elapsed_ns() > self.max_duration * 1e9:
            return "max-duration"
        return None


class WitnessTracker:
    """Parent pointers recorded at first discovery of each state."""

    def __init__(self, enabled: bool):
        self.enabled = enabled
        self._parent: dict[SystemState, tuple[SystemState, TransitionLabel]] = {}

    def record(
        self, child: SystemState, parent: SystemState, label: TransitionLabel
    ) -> None:
        if self.enabled and child not in self._parent:
            self._parent[child] = (parent, label)

    def path(self, target: SystemState) -> Optional[list[WitnessStep]]:
        if not self.enabled:
            return None
        steps = []
        current = target
        while current in self._parent:
            parent, label = self._parent[current]
            steps.append(WitnessStep(label, current))
            current = parent
        steps.append(WitnessStep(None, current))
        return steps[::-1]
