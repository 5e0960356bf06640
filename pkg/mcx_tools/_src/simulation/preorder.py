"""
preorder.py

The idle-tasks simulation preorder.

s1 <=_idle s2 (s2 simulates s1) iff both states have the same criticality and the same
rct vector, agree on nat for every active task, and s2 has an earlier or equal next
arrival for every idle task. A state that simulates another can match all its moves,
so it reaches a deadline miss whenever the smaller one does.
"""

from mcx_tools._src.semantics.state import SystemState


def simulates(s1: SystemState, s2: SystemState) -> bool:
    """True iff s1 <=_idle s2.

    Usage:

    >>> import mcx_tools as mcx
    >>> mcx.simulates(mcx.parse_state("LO[00,01]"), mcx.parse_state("LO[00,00]"))
    True
    """
    if s1.cri != s2.cri or s1.rct != s2.rct:
        return False
    for r, n1, n2 in zip(s1.rct, s1.nat, s2.nat):
        if r > 0:
            if n1 != n2:
                return False
        elif n2 > n1:
            return False
    return True


def simulation_key(s: SystemState) -> tuple:
    """The part of a state every comparable state shares: cri, rct, nat of active tasks.

    Idle tasks get -1 in the nat part.
    """
    return (
        s.cri,
        s.rct,
        tuple(n if r > 0 else -1 for n, r in zip(s.nat, s.rct)),
    )
