"""
state.py

System states of the dual-criticality automaton and the predicates defined on them.

A state keeps, per task, the earliest next arrival (nat) and the worst-case remaining
computation time of the current job at the current criticality (rct), plus the
global criticality. Task ids are 1-based; tuples are indexed by id - 1.

Functions:
- initial_state(ts) -> SystemState
- ttd(ts, s, i) -> int
- active(s) / eligible(ts, s) / completed(ts, s) -> frozenset[int]
- is_deadline_miss(ts, s) -> bool
- check_state(ts, s) -> list[str]
"""

from dataclasses import dataclass
from functools import total_ordering
import struct

from beartype import beartype

from mcx_tools._src.model.tasks import Criticality, TaskSet

_PAIR = struct.Struct(">II")


@total_ordering
@dataclass(frozen=True, slots=True)
class SystemState:
    nat: tuple[int, ...]
    rct: tuple[int, ...]
    cri: Criticality = Criticality.LO

    def encode(self) -> bytes:
        """Fixed-width canonical encoding: (nat, rct) big-endian pairs, then cri."""
        pairs = b"".join(_PAIR.pack(n, r) for n, r in zip(self.nat, self.rct))
        return pairs + bytes((int(self.cri),))

    def __lt__(self, other: "SystemState") -> bool:
        if not isinstance(other, SystemState):
            return NotImplemented
        return self.encode() < other.encode()

    @property
    def n(self) -> int:
        return len(self.rct)

    def __str__(self) -> str:
        from mcx_tools._src.semantics.render import render_state

        return render_state(self)


@beartype
def initial_state(ts: TaskSet) -> SystemState:
    """v_0: LO criticality, nothing pending, everything may release."""
    zeros = (0,) * ts.n
    return SystemState(nat=zeros, rct=zeros, cri=Criticality.LO)


def ttd(ts: TaskSet, s: SystemState, i: int) -> int:
    """Time to deadline of the last released job of task i: nat - (T - D)."""
    return s.nat[i - 1] - ts.offsets[i - 1]


def active(s: SystemState) -> frozenset[int]:
    return frozenset(i for i, r in enumerate(s.rct, start=1) if r > 0)


def eligible(ts: TaskSet, s: SystemState) -> frozenset[int]:
    """Tasks that may release a job now: idle, arrival reached, level >= cri."""
    return frozenset(
        i
        for i, (n, r, level) in enumerate(zip(s.nat, s.rct, ts.levels), start=1)
        if r == 0 and n == 0 and level >= s.cri
    )


def completed(ts: TaskSet, s: SystemState) -> frozenset[int]:
    """Implicitly completed tasks: rct = 0 and C_i(cri) = C_i(L_i).

    A HI task idle in LO mode is not completed: its job may still need
    C(HI) - C(LO) more time.
    """
    budgets = ts.wcets(s.cri)
    return frozenset(
        i
        for i, (r, c, c_max) in enumerate(zip(s.rct, budgets, ts.c_max), start=1)
        if r == 0 and c == c_max
    )


def is_deadline_miss(ts: TaskSet, s: SystemState) -> bool:
    return any(
        r > 0 and n - off <= 0 for n, r, off in zip(s.nat, s.rct, ts.offsets)
    )


@beartype
def check_state(ts: TaskSet, s: SystemState) -> list[str]:
    """Lists every broken SystemState invariant (empty when s is well formed)."""
    problems = []
    if len(s.nat) != ts.n or len(s.rct) != ts.n:
        problems.append(
            f"expected {ts.n} tasks, got nat={len(s.nat)} rct={len(s.rct)}"
        )
        return problems
    for t, n, r in zip(ts.tasks, s.nat, s.rct):
        if not 0 <= n <= t.period:
            problems.append(f"task {t.id}: nat={n} outside [0, {t.period}]")
        if not 0 <= r <= t.c_max:
            problems.append(f"task {t.id}: rct={r} outside [0, {t.c_max}]")
        if s.cri is Criticality.LO and r > t.c_lo:
            problems.append(f"task {t.id}: rct={r} exceeds C(LO)={t.c_lo} in LO mode")
    return problems
