"""
edf.py

Earliest-deadline-first and its mixed-criticality variant EDF-VD.

EDF-VD shrinks the deadlines of HI tasks by a discount factor lambda while the system
is in LO mode, so that HI jobs run early enough to absorb a mode change:

    lambda = U^LO_HI / (1 - U^LO_LO)
    ttvd_S(tau_i) = nat_S(tau_i) - (T_i - D_i * lambda)   if L_i = HI
                    ttd_S(tau_i)                          otherwise

Virtual deadlines are only used when plain EDF is not enough, i.e. when
U^LO_LO + U^HI_HI > 1, and never in HI mode.

Functions:
- edf(ts, s) -> Optional[int]
- edf_vd(ts, s, cfg) -> Optional[int]
- edf_vd_sufficient_test(ts) -> bool
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from beartype import beartype

from mcx_tools._src.model.tasks import Criticality, TaskSet, utilization_summary
from mcx_tools._src.schedulers.base import Scheduler, SchedulerKind
from mcx_tools._src.semantics.state import SystemState


def _require_implicit(ts: TaskSet) -> None:
    if not ts.implicit_deadlines:
        msg = "EDF-VD assumes implicit deadlines (D = T for every task). "
        msg += f"User input: deadlines {[t.deadline for t in ts]}, periods {list(ts.periods)}"
        raise ValueError(msg)


def _argmin(values) -> Optional[int]:
    """1-based id of the smallest key among (id, key) pairs, ties to the smaller id."""
    best, best_key = None, None
    for i, key in values:
        if best is None or key < best_key:
            best, best_key = i, key
    return best


def edf(ts: TaskSet, s: SystemState) -> Optional[int]:
    """The active task with the smallest ttd, ties to the smaller id."""
    return _argmin(
        (i, n - off)
        for i, (n, r, off) in enumerate(zip(s.nat, s.rct, ts.offsets), start=1)
        if r > 0
    )


@dataclass(frozen=True)
class EdfVdConfig:
    """EDF-VD parameters.

    Args:
        lam (Fraction): the deadline discount factor lambda
        use_virtual (bool): whether LO mode schedules by virtual deadlines
        virtual_offsets (tuple[Fraction, ...]): T_i - D_i * lambda for HI tasks,
            T_i - D_i for LO tasks
    """

    lam: Fraction
    use_virtual: bool
    virtual_offsets: tuple[Fraction, ...] = ()

    @classmethod
    def from_taskset(cls, ts: TaskSet) -> "EdfVdConfig":
        _require_implicit(ts)
        u = utilization_summary(ts)
        denominator = 1 - u.u_lo_of_lo
        # no discount when LO tasks already saturate the processor
        lam = u.u_lo_of_hi / denominator if denominator > 0 else Fraction(1)
        offsets = tuple(
            t.period - t.deadline * lam if t.level is Criticality.HI else Fraction(t.offset)
            for t in ts.tasks
        )
        return cls(
            lam=lam,
            use_virtual=u.u_lo_of_lo + u.u_hi_of_hi > 1,
            virtual_offsets=offsets,
        )


def edf_vd(ts: TaskSet, s: SystemState, cfg: EdfVdConfig) -> Optional[int]:
    """EDF on virtual deadlines in LO mode (when enabled), plain EDF otherwise."""
    _require_implicit(ts)
    if s.cri is Criticality.HI or not cfg.use_virtual:
        return edf(ts, s)
    return _argmin(
        (i, n - off)
        for i, (n, r, off) in enumerate(
            zip(s.nat, s.rct, cfg.virtual_offsets), start=1
        )
        if r > 0
    )


@beartype
def edf_vd_sufficient_test(ts: TaskSet) -> bool:
    """Utilization-based sufficient schedulability test of EDF-VD.

    Schedulable if U^LO <= 1 and either U^LO_LO + U^HI_HI <= 1 (plain EDF
    suffices) or lambda * U^LO_LO + U^HI_HI <= 1.

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.TaskSet.from_tuples([(1, 2, 2, 2, "HI"), (1, 1, 2, 2, "LO")])
    >>> mcx.edf_vd_sufficient_test(ts)
    False
    """
    _require_implicit(ts)
    u = utilization_summary(ts)
    if u.u_lo > 1:
        return False
    if u.u_lo_of_lo + u.u_hi_of_hi <= 1:
        return True
    cfg = EdfVdConfig.from_taskset(ts)
    return cfg.lam * u.u_lo_of_lo + u.u_hi_of_hi <= 1


class EdfScheduler(Scheduler):
    kind = SchedulerKind.EDF

    def select(self, s: SystemState) -> Optional[int]:
        return edf(self.ts, s)


class EdfVdScheduler(Scheduler):
    kind = SchedulerKind.EDF_VD

    def __init__(self, ts: TaskSet, cfg: Optional[EdfVdConfig] = None):
        super().__init__(ts)
        self.cfg = cfg if cfg is not None else EdfVdConfig.from_taskset(ts)

    def select(self, s: SystemState) -> Optional[int]:
        if s.cri is Criticality.HI or not self.cfg.use_virtual:
            return edf(self.ts, s)
        return edf_vd(self.ts, s, self.cfg)
