"""
transitions.py

The three intermediary transitions (release, run, signal) and their composition
into the automaton's edge relation.

An edge S1 -> S2 exists iff, for some subset tau+ of Eligible(S1) and some theta:
    S1 --release(tau+)--> S+ --run(sch(S+))--> S_rn --signal(sch(S+), theta)--> S2

Functions:
- release(ts, s, chosen) -> SystemState
- run(ts, s, who) -> SystemState
- signal(ts, s, ran, theta) -> SystemState
- successors(ts, s, sch, dedup, periodic) -> list[tuple[TransitionLabel, SystemState]]
- intermediary_steps(ts, s, sch, periodic) -> list[Step]

The public transition functions check their preconditions and raise
InvalidTransitionError; `successors` composes unchecked versions.
"""

from dataclasses import dataclass
from itertools import compress
from typing import Callable, Iterable, Optional

from mcx_tools._src.model.tasks import Criticality, TaskSet
from mcx_tools._src.semantics.render import render_label, render_step
from mcx_tools._src.semantics.state import (
    SystemState,
    active,
    completed,
    eligible,
)

SchedulerFn = Callable[[SystemState], Optional[int]]


class InvalidTransitionError(ValueError):
    """A release/run/signal precondition does not hold."""


@dataclass(frozen=True, slots=True)
class TransitionLabel:
    released: frozenset[int]
    ran: Optional[int]
    signaled: bool

    def __str__(self) -> str:
        return render_label(self)


@dataclass(frozen=True, slots=True)
class StepLabel:
    """One intermediary transition: kind is "release", "run" or "signal"."""

    kind: str
    released: frozenset[int] = frozenset()
    ran: Optional[int] = None
    signaled: bool = False

    def __str__(self) -> str:
        return render_step(self)


Step = tuple[SystemState, StepLabel, SystemState]


def _release(ts: TaskSet, s: SystemState, chosen: Iterable[int]) -> SystemState:
    nat = list(s.nat)
    rct = list(s.rct)
    budgets = ts.wcets(s.cri)
    for i in chosen:
        nat[i - 1] = ts.periods[i - 1]
        rct[i - 1] = budgets[i - 1]
    return SystemState(nat=tuple(nat), rct=tuple(rct), cri=s.cri)


def _run(s: SystemState, who: Optional[int]) -> SystemState:
    nat = tuple(n - 1 if n > 0 else 0 for n in s.nat)
    if who is None:
        return SystemState(nat=nat, rct=s.rct, cri=s.cri)
    rct = list(s.rct)
    rct[who - 1] -= 1
    return SystemState(nat=nat, rct=tuple(rct), cri=s.cri)


def _is_completed(ts: TaskSet, s: SystemState, i: int) -> bool:
    return s.rct[i - 1] == 0 and ts.wcets(s.cri)[i - 1] == ts.c_max[i - 1]


def _signal(
    ts: TaskSet, s: SystemState, ran: Optional[int], theta: bool
) -> SystemState:
    if ran is None or _is_completed(ts, s, ran):
        return s
    remaining = s.rct[ran - 1]
    if theta and remaining > 0:
        # explicit completion
        rct = list(s.rct)
        rct[ran - 1] = 0
        return SystemState(nat=s.nat, rct=tuple(rct), cri=s.cri)
    if not theta and remaining == 0:
        return _mode_change(ts, s, ran)
    return s


def _mode_change(ts: TaskSet, s: SystemState, ran: int) -> SystemState:
    rct = []
    for i, (r, level, c_lo, c_hi) in enumerate(
        zip(s.rct, ts.levels, ts.c_lo, ts.c_hi), start=1
    ):
        if i == ran:
            rct.append(c_hi - c_lo)
        elif level is Criticality.HI and r > 0:
            rct.append(r + c_hi - c_lo)
        else:
            rct.append(0)
    return SystemState(nat=s.nat, rct=tuple(rct), cri=Criticality.HI)


def release(ts: TaskSet, s: SystemState, chosen: Iterable[int]) -> SystemState:
    """Releases a new job of every chosen task: nat := T_i, rct := C_i(cri).

    Args:
        ts (TaskSet): the task set
        s (SystemState): the source state
        chosen (Iterable[int]): task ids, a subset of eligible(ts, s) (may be empty)

    Returns:
        SystemState: S+
    """
    chosen = frozenset(chosen)
    allowed = eligible(ts, s)
    if not chosen <= allowed:
        msg = f"Only eligible tasks may release a job. Eligible: {sorted(allowed)}. "
        msg += f"User input: {sorted(chosen)}"
        raise InvalidTransitionError(msg)
    return _release(ts, s, sorted(chosen))


def run(ts: TaskSet, s: SystemState, who: Optional[int]) -> SystemState:
    """Elapses one time unit while `who` (an active task, or None) executes."""
    if who is not None and who not in active(s):
        msg = f"Only an active task may run. Active: {sorted(active(s))}. "
        msg += f"User input: {who}"
        raise InvalidTransitionError(msg)
    return _run(s, who)


def signal(
    ts: TaskSet, s: SystemState, ran: Optional[int], theta: bool
) -> SystemState:
    """Resolves the end of the time unit for the task that just ran.

    Three cases:
    - identity when ran is None or completed, when the job keeps running
      (not theta, rct > 0), or when theta is raised with rct = 0;
    - explicit completion (theta, rct > 0): rct(ran) := 0;
    - mode change (not theta, rct = 0, ran not completed): cri := HI, the job of
      `ran` and every active HI job get C(HI) - C(LO) more, LO jobs are dropped.
    """
    if ran is not None and ran not in ts.ids:
        msg = f"Unknown task. Must be one of {list(ts.ids)} or None. "
        msg += f"User input: {ran}"
        raise InvalidTransitionError(msg)
    return _signal(ts, s, ran, theta)


def _subsets(ids: list[int]):
    """All subsets of `ids` in canonical binary order (bit k <-> ids[k])."""
    for mask in range(1 << len(ids)):
        yield tuple(compress(ids, ((mask >> k) & 1 for k in range(len(ids)))))


def successors(
    ts: TaskSet,
    s: SystemState,
    sch: SchedulerFn,
    dedup: bool = True,
    periodic: bool = False,
) -> list[tuple[TransitionLabel, SystemState]]:
    """Every automaton edge leaving `s`, in a fixed order.

    Release subsets are enumerated in canonical binary order and theta False
    before True. With `dedup`, each target state is kept once, with its first label.
    In the periodic variant the only release subset is Eligible(S).

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.TaskSet.from_tuples([(1, 2, 2, 2, "HI"), (1, 1, 2, 2, "LO")])
    >>> sch = mcx.build_scheduler("edf-vd", ts)
    >>> len(mcx.successors(ts, mcx.initial_state(ts), sch))
    6
    """
    ready = sorted(eligible(ts, s))
    releases = [tuple(ready)] if periodic else _subsets(ready)
    out = []
    seen = set()
    for chosen in releases:
        s_plus = _release(ts, s, chosen) if chosen else s
        who = sch(s_plus)
        s_rn = _run(s_plus, who)
        for theta in (False, True):
            target = _signal(ts, s_rn, who, theta)
            if dedup:
                if target in seen:
                    continue
                seen.add(target)
            label = TransitionLabel(released=frozenset(chosen), ran=who, signaled=theta)
            out.append((label, target))
    return out


def intermediary_steps(
    ts: TaskSet,
    s: SystemState,
    sch: SchedulerFn,
    periodic: bool = False,
) -> list[Step]:
    """The release, run and signal transitions behind every edge leaving `s`.

    Steps come in the order `successors` composes them, one release, one run and
    two signals (theta False, then True) per release subset. Repeated steps are kept.

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.TaskSet.from_tuples([(1, 2, 2, 2, "HI"), (1, 1, 2, 2, "LO")])
    >>> sch = mcx.build_scheduler("edf-vd", ts)
    >>> for src, step, dst in mcx.intermediary_steps(ts, mcx.initial_state(ts), sch)[-4:]:
    ...     print(src, "->", dst, step)
    LO[00,00] -> LO[12,12] release={1,2}
    LO[12,12] -> LO[01,11] run=1
    LO[01,11] -> HI[11,01] signal=1 theta=0
    LO[01,11] -> LO[01,11] signal=1 theta=1
    """
    ready = sorted(eligible(ts, s))
    releases = [tuple(ready)] if periodic else _subsets(ready)
    out = []
    for chosen in releases:
        s_plus = _release(ts, s, chosen) if chosen else s
        out.append((s, StepLabel("release", released=frozenset(chosen)), s_plus))
        who = sch(s_plus)
        s_rn = _run(s_plus, who)
        out.append((s_plus, StepLabel("run", ran=who), s_rn))
        for theta in (False, True):
            target = _signal(ts, s_rn, who, theta)
            out.append((s_rn, StepLabel("signal", ran=who, signaled=theta), target))
    return out
