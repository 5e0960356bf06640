"""
generate.py

Reproducible random dual-criticality task sets with implicit deadlines.

Recipe, per attempt:
- T_i log-uniform integer in [t_min, t_max]: floor(exp(U(ln t_min, ln(t_max + 1))))
- L_i = HI with probability p_hi
- delta ~ U(-mu, mu) with mu = min(U*, 1 - U*)
- LO utilizations: sum U* + delta, bounds [1/T_i, 1]
- HI utilizations: sum U* - delta, bounds [u^LO_i, 1] for HI tasks, [0, 0] otherwise
- C_i(LO) = round(u^LO_i * T_i), C_i(HI) = round(u^HI_i * T_i) for HI tasks,
  rounding half up and never below 1; D_i = T_i

Drop rules: U^LO > 1, U^HI > 1, duplicates, single-criticality sets and
|U_avg - U*| > 0.005 on the realized (rounded) set; draws whose sampler bounds cannot
be met are counted as `infeasible`.

Every attempt derives its own generator from SeedSequence([seed, attempt]) (PCG64),
so a report is a pure function of its parameters.
"""

from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
import json
import math
import os
from typing import Optional

from beartype import beartype
from loguru import logger
import numpy as np

from mcx_tools._src.generator.simplex import InfeasibleBoundsError, sample_bounded_simplex
from mcx_tools._src.model.io import dump_taskset
from mcx_tools._src.model.tasks import Criticality, Task, TaskSet, utilization_summary

U_AVG_TOLERANCE = Fraction(5, 1000)

DROP_REASONS = (
    "u-lo",
    "u-hi",
    "duplicate",
    "single-criticality",
    "u-avg",
    "infeasible",
)


@dataclass(frozen=True)
class GenParams:
    """Generation parameters.

    Args:
        n (int): tasks per set
        t_min (int): smallest period
        t_max (int): largest period
        p_hi (float): probability that a task is HI
        u_target (float): target average utilization U* in [0, 1]
        count (int): number of sets to accept
        seed (int): 64-bit seed
        max_attempts (int, optional): retry cap, 1000 * count by default
    """

    n: int
    t_min: int
    t_max: int
    p_hi: float
    u_target: float
    count: int = 1
    seed: int = 0
    max_attempts: Optional[int] = None

    def __post_init__(self):
        problems = []
        if self.n < 1:
            problems.append(f"n >= 1 (got {self.n})")
        if not 1 <= self.t_min <= self.t_max:
            problems.append(f"1 <= t_min <= t_max (got {self.t_min}, {self.t_max})")
        if not 0 <= self.p_hi <= 1:
            problems.append(f"0 <= p_hi <= 1 (got {self.p_hi})")
        if not 0 <= self.u_target <= 1:
            problems.append(f"0 <= u_target <= 1 (got {self.u_target})")
        if self.count < 1:
            problems.append(f"count >= 1 (got {self.count})")
        if not 0 <= self.seed < 2**64:
            problems.append(f"0 <= seed < 2**64 (got {self.seed})")
        if problems:
            raise ValueError("Invalid generation parameters, need " + "; ".join(problems))

    @property
    def attempts_cap(self) -> int:
        return self.max_attempts if self.max_attempts is not None else 1000 * self.count

    @property
    def target(self) -> Fraction:
        return Fraction(self.u_target).limit_denominator(10**9)


@dataclass
class GenReport:
    params: GenParams
    accepted: list[TaskSet] = field(default_factory=list)
    attempts_of: list[int] = field(default_factory=list)
    dropped: dict[str, int] = field(default_factory=lambda: dict.fromkeys(DROP_REASONS, 0))
    attempts: int = 0

    def manifest(self) -> dict:
        return {
            "params": asdict(self.params),
            "accepted": len(self.accepted),
            "attempts": self.attempts,
            "dropped": dict(self.dropped),
            "sets": [
                {"name": ts.name, "attempt": attempt}
                for ts, attempt in zip(self.accepted, self.attempts_of)
            ],
        }


def round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def log_uniform_periods(
    rng: np.random.Generator, n: int, t_min: int, t_max: int
) -> list[int]:
    draws = np.exp(rng.uniform(np.log(t_min), np.log(t_max + 1), size=n))
    return [int(min(max(math.floor(d), t_min), t_max)) for d in draws]


def canonical_form(ts: TaskSet) -> tuple:
    return tuple(sorted((t.period, t.c_lo, t.c_hi, int(t.level)) for t in ts.tasks))


def draw_taskset(p: GenParams, attempt: int) -> "tuple[Optional[TaskSet], Optional[str]]":
    """One generation attempt: a task set, or the drop reason.

    The duplicate rule needs the other accepted sets and is applied by `generate`.
    """
    rng = np.random.default_rng(np.random.SeedSequence([p.seed, attempt]))
    periods = log_uniform_periods(rng, p.n, p.t_min, p.t_max)
    levels = [
        Criticality.HI if x < p.p_hi else Criticality.LO for x in rng.random(p.n)
    ]
    u_star = p.target
    mu = min(u_star, 1 - u_star)
    delta = Fraction(rng.uniform(-float(mu), float(mu))) if mu > 0 else Fraction(0)
    if len(set(levels)) < 2:
        return None, "single-criticality"

    try:
        u_lo = sample_bounded_simplex(
            p.n, u_star + delta, [Fraction(1, t) for t in periods], [1] * p.n, rng
        )
        is_hi = [level is Criticality.HI for level in levels]
        u_hi = sample_bounded_simplex(
            p.n,
            u_star - delta,
            [u if hi else 0 for u, hi in zip(u_lo, is_hi)],
            [1 if hi else 0 for hi in is_hi],
            rng,
        )
    except InfeasibleBoundsError:
        return None, "infeasible"

    tasks = []
    for idx, (period, level, ul, uh) in enumerate(zip(periods, levels, u_lo, u_hi), start=1):
        c_lo = max(1, round_half_up(ul * period))
        c_hi = max(c_lo, round_half_up(uh * period)) if level is Criticality.HI else c_lo
        tasks.append(Task(idx, c_lo, c_hi, period, period, level))
    ts = TaskSet(tuple(tasks))

    u = utilization_summary(ts)
    if u.u_lo > 1:
        return None, "u-lo"
    if u.u_hi > 1:
        return None, "u-hi"
    if abs(u.u_avg - u_star) > U_AVG_TOLERANCE:
        return None, "u-avg"
    return ts, None


@beartype
def generate(p: GenParams) -> GenReport:
    """Generates `p.count` task sets (fewer if the retry cap is hit).

    Usage:

    >>> import mcx_tools as mcx
    >>> p = mcx.GenParams(n=4, t_min=5, t_max=12, p_hi=0.5, u_target=0.8, count=3, seed=1)
    >>> len(mcx.generate(p).accepted)
    3
    """
    report = GenReport(params=p)
    seen = set()
    drops: Counter = Counter()
    while len(report.accepted) < p.count and report.attempts < p.attempts_cap:
        attempt = report.attempts
        report.attempts += 1
        ts, reason = draw_taskset(p, attempt)
        if ts is not None:
            key = canonical_form(ts)
            if key in seen:
                ts, reason = None, "duplicate"
            else:
                seen.add(key)
        if ts is None:
            drops[reason] += 1
            continue
        name = f"n{p.n}-t{p.t_min}_{p.t_max}-u{p.u_target:.3f}-s{p.seed}-{len(report.accepted):04d}"
        report.accepted.append(TaskSet(ts.tasks, name=name))
        report.attempts_of.append(attempt)

    report.dropped.update(drops)
    if len(report.accepted) < p.count:
        logger.warning(
            f"Accepted {len(report.accepted)}/{p.count} task sets after "
            f"{report.attempts} attempts (u*={p.u_target}, drops={dict(drops)})"
        )
    return report


def write_report(report: GenReport, output_dir: str) -> list[str]:
    """Writes one JSON file per accepted set and a manifest.json next to them."""
    os.makedirs(output_dir, exist_ok=True)
    paths = []
    for ts in report.accepted:
        path = os.path.join(output_dir, f"{ts.name}.json")
        dump_taskset(ts, path)
        paths.append(path)
    with open(os.path.join(output_dir, "manifest.json"), "w", encoding="utf-8") as f:
        json.dump(report.manifest(), f, indent=2)
        f.write("\n")
    logger.info(f"Wrote {len(paths)} task sets to {output_dir}")
    return paths
