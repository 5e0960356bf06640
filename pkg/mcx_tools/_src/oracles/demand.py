"""
demand.py

State-relative demand: how much work must be done before a future instant t
(measured from the current state) by jobs whose deadlines fall before t, assuming the
system is in mode alpha or switches to it at the next possible instant.

Functions:
- nj(ts, s, i, t, alpha): number of future jobs of task i with deadlines <= t
- df(ts, s, i, t, alpha): demand of task i up to t
- dbf(ts, s, t, alpha): demand of the whole task set up to t
"""

from mcx_tools._src.model.tasks import Criticality, TaskSet
from mcx_tools._src.semantics.state import SystemState, ttd


def nj(ts: TaskSet, s: SystemState, i: int, t: int, alpha: Criticality) -> int:
    if ts.levels[i - 1] < alpha:
        return 0
    return max(t - ttd(ts, s, i), 0) // ts.periods[i - 1]


def df(ts: TaskSet, s: SystemState, i: int, t: int, alpha: Criticality) -> int:
    """Demand function of task i in state s, up to t, in mode alpha.

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.TaskSet.from_tuples([(1, 2, 2, 2, "HI"), (1, 1, 2, 2, "LO")])
    >>> s = mcx.parse_state("LO[12,12]")
    >>> mcx.df(ts, s, 1, 2, mcx.Criticality.LO)
    1
    """
    if t < ttd(ts, s, i) or ts.levels[i - 1] < alpha:
        return 0
    budget = ts.wcets(alpha)[i - 1]
    future = nj(ts, s, i, t, alpha) * budget
    rct = s.rct[i - 1]
    if rct == 0:
        return future
    return future + budget - ts.wcets(s.cri)[i - 1] + rct


def dbf(ts: TaskSet, s: SystemState, t: int, alpha: Criticality) -> int:
    return sum(df(ts, s, i, t, alpha) for i in ts.ids)
