from dataclasses import dataclass
from typing import Optional

from loguru import logger
import numpy as np

from mcx_tools._src.experiments.spec import ExperimentSpec
from mcx_tools._src.generator.generate import GenParams, draw_taskset, generate
from mcx_tools._src.model.feasibility import due_diligence
from mcx_tools._src.model.tasks import TaskSet


@dataclass(frozen=True)
class CorpusEntry:
    """One generated task set together with everything needed to regenerate it."""

    set_id: str
    params: GenParams
    index: int
    attempt: int
    taskset: TaskSet


def point_seed(seed: int, n: int, t_max: int, u_target: float) -> int:
    """Sub-seed of one grid point, independent of the grid's other points."""
    key = [seed, n, t_max, int(round(u_target * 10**6))]
    return int(np.random.SeedSequence(key).generate_state(1, dtype=np.uint64)[0])


def build_corpus(spec: ExperimentSpec) -> list[CorpusEntry]:
    """Generates `gen.count` task sets at every (n, t_max, U*) point of the grid.

    Sets failing due diligence are left out (with implicit deadlines and the
    U^LO, U^HI drop rules this does not happen for generated sets).
    """
    grid = spec.gen
    corpus = []
    for n in grid.n:
        for t_max in grid.t_max:
            for u in grid.targets():
                params = GenParams(
                    n=n,
                    t_min=grid.t_min,
                    t_max=t_max,
                    p_hi=grid.p_hi,
                    u_target=u,
                    count=grid.count,
                    seed=point_seed(grid.seed, n, t_max, u),
                )
                report = generate(params)
                for index, (ts, attempt) in enumerate(
                    zip(report.accepted, report.attempts_of)
                ):
                    verdict = due_diligence(ts)
                    if not verdict:
                        logger.warning(f"Skipping {ts.name}: {verdict.reason}")
                        continue
                    corpus.append(CorpusEntry(ts.name, params, index, attempt, ts))
    logger.info(f"Corpus: {len(corpus)} task sets")
    return corpus


def regenerate(params: GenParams, attempt: int) -> Optional[TaskSet]:
    """Rebuilds the task set drawn at `attempt` (duplicates are not re-checked)."""
    ts, _ = draw_taskset(params, attempt)
    return ts
