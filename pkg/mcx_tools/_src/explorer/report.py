"""
report.py

The result of an exploration and helpers to inspect it.

Classes:
- Outcome: Safe, Unsafe or Inconclusive (a limit was hit)
- WitnessStep: one (label, state) step of a witness path
- ExplorationReport: verdict, counters, timing and the optional witness

Functions:
- replay_witness(ts, report) -> list[SystemState]
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from mcx_tools._src.model.tasks import TaskSet
from mcx_tools._src.semantics.state import SystemState, initial_state
from mcx_tools._src.semantics.transitions import (
    InvalidTransitionError,
    SchedulerFn,
    TransitionLabel,
    release,
    run,
    signal,
)

DEADLINE_MISS = "deadline-miss"
SIMULATION = "simulation"


class Outcome(str, Enum):
    SAFE = "Safe"
    UNSAFE = "Unsafe"
    INCONCLUSIVE = "Inconclusive"

    @property
    def exit_code(self) -> int:
        return {Outcome.SAFE: 0, Outcome.UNSAFE: 1, Outcome.INCONCLUSIVE: 2}[self]


@dataclass(frozen=True)
class WitnessStep:
    label: Optional[TransitionLabel]
    state: SystemState

    def __str__(self) -> str:
        if self.label is None:
            return str(self.state)
        return f"--[{self.label}]--> {self.state}"


@dataclass
class ExplorationReport:
    outcome: Outcome
    algorithm: str
    scheduler: str
    oracles: str
    visited: int = 0
    stored: int = 0
    layers: int = 0
    duration_ns: int = 0
    pruned: dict[str, int] = field(default_factory=dict)
    flagged_by: Optional[str] = None
    limit: Optional[str] = None
    witness: Optional[list[WitnessStep]] = None
    taskset: Optional[str] = None

    @property
    def duration(self) -> float:
        return self.duration_ns / 1e9

    def to_dict(self, with_duration: bool = True) -> dict:
        """JSON-ready view. `with_duration=False` gives a reproducible record."""
        doc = {
            "taskset": self.taskset,
            "outcome": self.outcome.value,
            "algorithm": self.algorithm,
            "scheduler": self.scheduler,
            "oracles": self.oracles,
            "visited": self.visited,
            "stored": self.stored,
            "layers": self.layers,
            "pruned": dict(sorted(self.pruned.items())),
            "flagged_by": self.flagged_by,
            "limit": self.limit,
        }
        if with_duration:
            doc["duration_ns"] = self.duration_ns
        if self.witness is not None:
            doc["witness"] = [
                {
                    "label": None if step.label is None else str(step.label),
                    "state": str(step.state),
                }
                for step in self.witness
            ]
        return doc


def replay_witness(
    ts: TaskSet, report: ExplorationReport, scheduler: Optional[SchedulerFn] = None
) -> list[SystemState]:
    """Re-executes a witness path through release, run and signal.

    With a scheduler, also checks that every step runs the task it picks.

    Returns:
        list[SystemState]: the replayed states, one per step

    Raises:
        ValueError: the report has no witness, or a replayed state differs from the
            recorded one
    """
    if not report.witness:
        raise ValueError("The report carries no witness path")
    first = report.witness[0]
    if first.state != initial_state(ts):
        raise ValueError(f"Witness does not start at the initial state: {first.state}")
    states = [first.state]
    for step in report.witness[1:]:
        label = step.label
        s_plus = release(ts, states[-1], label.released)
        if scheduler is not None and scheduler(s_plus) != label.ran:
            msg = f"Witness runs {label.ran} in {s_plus}, "
            msg += f"the scheduler picks {scheduler(s_plus)}"
            raise InvalidTransitionError(msg)
        s_rn = run(ts, s_plus, label.ran)
        s_next = signal(ts, s_rn, label.ran, label.signaled)
        if s_next != step.state:
            msg = f"Replaying '{label}' from {states[-1]} gives {s_next}, "
            msg += f"the witness records {step.state}"
            raise InvalidTransitionError(msg)
        states.append(s_next)
    return states
