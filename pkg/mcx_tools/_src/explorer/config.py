from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

from mcx_tools._src.oracles.oracles import OracleSet
from mcx_tools._src.schedulers.base import SchedulerKind

DEFAULT_TIMEOUT = 15 * 60.0


class SearchAlgorithm(str, Enum):
    BFS = "bfs"
    ACBFS = "acbfs"

    @classmethod
    def parse(cls, value: "str | SearchAlgorithm") -> "SearchAlgorithm":
        if isinstance(value, SearchAlgorithm):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            msg = "Unrecognized search algorithm. "
            msg += f"Must be one of {[k.value for k in cls]}. User input: {value}"
            raise ValueError(msg) from None


@dataclass(frozen=True)
class SearchConfig:
    """How to explore an automaton.

    Args:
        algorithm (SearchAlgorithm): plain BFS or the antichain search (ACBFS)
        scheduler (SchedulerKind): the scheduler the automaton is built with
        oracles (OracleSet): enabled safe/unsafe oracles
        max_states (int, optional): bound on expanded states. A layer that would
            exceed it is not expanded and the search is inconclusive.
        max_duration (float, optional): wall-time bound in seconds
        workers (int): processes used to expand a layer
        witness (bool): record a transition path to the state that ended the search
        periodic (bool): periodic release model (every eligible task releases)
        force (bool): analyse even when due diligence fails
    """

    algorithm: SearchAlgorithm = SearchAlgorithm.ACBFS
    scheduler: SchedulerKind = SchedulerKind.EDF_VD
    oracles: OracleSet = field(default_factory=OracleSet.none)
    max_states: Optional[int] = None
    max_duration: Optional[float] = None
    workers: int = 1
    witness: bool = False
    periodic: bool = False
    force: bool = False

    def __post_init__(self):
        object.__setattr__(self, "algorithm", SearchAlgorithm.parse(self.algorithm))
        object.__setattr__(self, "scheduler", SchedulerKind.parse(self.scheduler))
        object.__setattr__(self, "oracles", OracleSet.parse(self.oracles))
        if self.max_states is not None and self.max_states < 0:
            msg = "max_states must be non-negative. "
            msg += f"User input: {self.max_states}"
            raise ValueError(msg)
        if self.max_duration is not None and self.max_duration <= 0:
            msg = "max_duration must be positive. "
            msg += f"User input: {self.max_duration}"
            raise ValueError(msg)
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1. User input: {self.workers}")

    def with_(self, **changes) -> "SearchConfig":
        return replace(self, **changes)
