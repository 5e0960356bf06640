from typing import Optional

from mcx_tools._src.explorer.acbfs import acbfs
from mcx_tools._src.explorer.bfs import bfs
from mcx_tools._src.explorer.config import SearchAlgorithm, SearchConfig
from mcx_tools._src.explorer.report import ExplorationReport
from mcx_tools._src.model.tasks import TaskSet
from mcx_tools._src.schedulers.base import Scheduler


def explore(
    ts: TaskSet,
    cfg: SearchConfig,
    scheduler: Optional[Scheduler] = None,
) -> ExplorationReport:
    """Runs the search named by `cfg.algorithm`."""
    if cfg.algorithm is SearchAlgorithm.BFS:
        return bfs(ts, cfg, scheduler=scheduler)
    return acbfs(ts, cfg, scheduler=scheduler)
