"""
antichain.py

Antichains of states under the idle-tasks preorder.

An antichain stores only maximal states: inserting a state already simulated by a
member is a no-op, and inserting a new maximal state evicts every member it simulates.
Its downward closure dc(A), the set of states simulated by some member, only grows.

Members are bucketed on `simulation_key`; two states are comparable only if their
keys are equal, so every query scans a single bucket and compares nat vectors
componentwise.

Classes:
- InsertResult
- Antichain

Functions:
- antichain_insert(a, s) -> InsertResult
- contains_in_down_closure(a, s) -> bool
- max_of(states) -> Antichain
"""

from dataclasses import dataclass
from typing import Iterable, Iterator

from mcx_tools._src.semantics.state import SystemState
from mcx_tools._src.simulation.preorder import simulation_key


def _nat_leq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class InsertResult:
    absorbed: bool
    evicted: tuple[SystemState, ...] = ()

    @property
    def inserted(self) -> bool:
        return not self.absorbed


class Antichain:
    def __init__(self, states: Iterable[SystemState] = ()):
        self._buckets: dict[tuple, list[SystemState]] = {}
        self._size = 0
        for s in states:
            self.insert(s)

    def __len__(self) -> int:
        return self._size

    def __bool__(self) -> bool:
        return self._size > 0

    def __iter__(self) -> Iterator[SystemState]:
        return iter(self.states())

    def __contains__(self, s: SystemState) -> bool:
        """Exact membership (not down-closure membership)."""
        return s in self._buckets.get(simulation_key(s), ())

    def states(self) -> list[SystemState]:
        """Members in canonical encoding order."""
        return sorted(
            (s for bucket in self._buckets.values() for s in bucket),
            key=SystemState.encode,
        )

    def covers(self, s: SystemState) -> bool:
        """True iff s is in dc(A), i.e. some member simulates s."""
        bucket = self._buckets.get(simulation_key(s))
        if not bucket:
            return False
        return any(_nat_leq(m.nat, s.nat) for m in bucket)

    def insert(self, s: SystemState) -> InsertResult:
        key = simulation_key(s)
        bucket = self._buckets.setdefault(key, [])
        if any(_nat_leq(m.nat, s.nat) for m in bucket):
            return InsertResult(absorbed=True)
        evicted = tuple(m for m in bucket if _nat_leq(s.nat, m.nat))
        if evicted:
            bucket[:] = [m for m in bucket if not _nat_leq(s.nat, m.nat)]
        bucket.append(s)
        self._size += 1 - len(evicted)
        return InsertResult(absorbed=False, evicted=evicted)

    def copy(self) -> "Antichain":
        other = Antichain()
        other._buckets = {k: list(v) for k, v in self._buckets.items()}
        other._size = self._size
        return other

    def __repr__(self) -> str:
        return f"Antichain({[str(s) for s in self.states()]})"


def antichain_insert(a: Antichain, s: SystemState) -> InsertResult:
    return a.insert(s)


def contains_in_down_closure(a: Antichain, s: SystemState) -> bool:
    return a.covers(s)


def max_of(states: Iterable[SystemState]) -> Antichain:
    """The maximal elements of a set of states.

    Usage:

    >>> import mcx_tools as mcx
    >>> states = [mcx.parse_state(x) for x in ("LO[00,00]", "LO[00,01]", "LO[01,00]")]
    >>> [str(s) for s in mcx.max_of(states)]
    ['LO[00,00]']
    """
    return Antichain(states)
