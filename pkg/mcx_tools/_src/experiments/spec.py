"""
spec.py

Experiment specifications: YAML files loaded with OmegaConf and merged over
structured defaults, then overridden by dotlist arguments (e.g. `gen.count=5`).

An experiment generates a corpus over a grid of (n, t_max, U*) points and runs every
planned (scheduler, search, oracle set) combination on every set.

Example:

    kind: oracle-impact
    gen:
      n: [4]
      t_min: 5
      t_max: [12]
      p_hi: 0.5
      u_range: [0.8, 1.0, 0.05]
      count: 20
      seed: 7
    schedulers: [edf-vd]
    searches: [acbfs]
    oracles: [none, hi-idle-point, neg-laxity, neg-worst-laxity, over-demand, hi-over-demand]
    timeout: 15m
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from loguru import logger
from omegaconf import OmegaConf

from mcx_tools._src.explorer.config import SearchAlgorithm
from mcx_tools._src.generator.grid import grid_range
from mcx_tools._src.oracles.oracles import OracleSet
from mcx_tools._src.schedulers.base import SchedulerKind
from mcx_tools._src.utils.time import parse_duration


class ExperimentKind(str, Enum):
    BFS_VS_ACBFS = "bfs-vs-acbfs"
    ORACLE_IMPACT = "oracle-impact"
    SCALABILITY = "scalability"
    SCHEDULABILITY_CURVE = "schedulability-curve"

    @classmethod
    def parse(cls, value: "str | ExperimentKind") -> "ExperimentKind":
        if isinstance(value, ExperimentKind):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            msg = "Unrecognized experiment kind. "
            msg += f"Must be one of {[k.value for k in cls]}. User input: {value}"
            raise ValueError(msg) from None


@dataclass
class GenGrid:
    n: List[int] = field(default_factory=lambda: [4])
    t_min: int = 5
    t_max: List[int] = field(default_factory=lambda: [12])
    p_hi: float = 0.5
    u_target: List[float] = field(default_factory=lambda: [0.8])
    # [start, stop, step]; replaces u_target when given
    u_range: Optional[List[float]] = None
    count: int = 20
    seed: int = 0

    def targets(self) -> list[float]:
        if self.u_range is not None:
            if len(self.u_range) != 3:
                msg = "u_range must be [start, stop, step]. "
                msg += f"User input: {list(self.u_range)}"
                raise ValueError(msg)
            return grid_range(*self.u_range)
        return [float(u) for u in self.u_target]


@dataclass
class ExperimentSpec:
    kind: str = ExperimentKind.BFS_VS_ACBFS.value
    name: Optional[str] = None
    gen: GenGrid = field(default_factory=GenGrid)
    schedulers: List[str] = field(default_factory=lambda: ["edf-vd"])
    searches: List[str] = field(default_factory=lambda: ["bfs", "acbfs"])
    oracles: List[str] = field(default_factory=lambda: ["none"])
    timeout: str = "15m"
    max_states: Optional[int] = None
    output_dir: str = "results"
    workers: Optional[int] = None
    plot: bool = True

    @property
    def experiment_kind(self) -> ExperimentKind:
        return ExperimentKind.parse(self.kind)

    @property
    def timeout_seconds(self) -> float:
        return parse_duration(self.timeout)

    @property
    def label(self) -> str:
        return self.name or self.experiment_kind.value

    def check(self) -> "ExperimentSpec":
        """Resolves every name once so that typos fail before any run starts.

        The kind, scheduler and search names are stored in their canonical spelling.
        """
        self.kind = ExperimentKind.parse(self.kind).value
        parse_duration(self.timeout)
        self.schedulers = [SchedulerKind.parse(s).value for s in self.schedulers]
        self.searches = [SearchAlgorithm.parse(s).value for s in self.searches]
        for o in self.oracles:
            OracleSet.parse(o)
        if not self.gen.targets():
            raise ValueError("The experiment grid has no U* point")
        if self.gen.count < 1:
            raise ValueError(f"gen.count must be at least 1. User input: {self.gen.count}")
        return self


def load_experiment_spec(
    path: Optional[str] = None, overrides: Optional[list[str]] = None
) -> ExperimentSpec:
    """Loads an experiment YAML over the structured defaults.

    Args:
        path (str, optional): YAML file; defaults only when None
        overrides (list[str], optional): dotlist overrides, e.g. ["gen.count=5"]

    Returns:
        ExperimentSpec: the resolved, checked specification
    """
    cfg = OmegaConf.structured(ExperimentSpec)
    if path is not None:
        logger.debug(f"Loading experiment spec: {path}")
        cfg = OmegaConf.merge(cfg, OmegaConf.load(path))
    if overrides:
        cfg = OmegaConf.merge(cfg, OmegaConf.from_dotlist(list(overrides)))
    spec = OmegaConf.to_object(cfg)
    return spec.check()


def spec_to_yaml(spec: ExperimentSpec) -> str:
    return OmegaConf.to_yaml(OmegaConf.structured(spec))
