"""
Independent brute-force reference for the automaton semantics.

Successors are recomputed directly from the release/run/signal definitions (without
the package's transition code), the reachable graph is built with networkx, and
"can reach a deadline miss" is answered with graph ancestry.
"""

from itertools import combinations
import random

import networkx as nx

import mcx_tools as mcx
from mcx_tools import Criticality, SystemState, TaskSet

LO, HI = Criticality.LO, Criticality.HI


def is_miss(ts: TaskSet, s: SystemState) -> bool:
    return any(
        s.rct[i] > 0 and s.nat[i] - (t.period - t.deadline) <= 0
        for i, t in enumerate(ts.tasks)
    )


def _signal(ts, nat, rct, cri, who, theta):
    if who is None:
        return SystemState(tuple(nat), tuple(rct), cri)
    t = ts.tasks[who - 1]
    left = rct[who - 1]
    if left == 0 and t.wcet(cri) == t.wcet(t.level):
        return SystemState(tuple(nat), tuple(rct), cri)
    if theta and left > 0:
        done = list(rct)
        done[who - 1] = 0
        return SystemState(tuple(nat), tuple(done), cri)
    if not theta and left == 0:
        bumped = []
        for j, u in enumerate(ts.tasks, start=1):
            if j == who:
                bumped.append(u.c_hi - u.c_lo)
            elif u.level is HI and rct[j - 1] > 0:
                bumped.append(rct[j - 1] + u.c_hi - u.c_lo)
            else:
                bumped.append(0)
        return SystemState(tuple(nat), tuple(bumped), HI)
    return SystemState(tuple(nat), tuple(rct), cri)


def successor_states(ts: TaskSet, s: SystemState, sch) -> set[SystemState]:
    """Every target state of the composed edge relation, as a set."""
    ready = [
        i
        for i, t in enumerate(ts.tasks, start=1)
        if s.rct[i - 1] == 0 and s.nat[i - 1] == 0 and t.level >= s.cri
    ]
    out = set()
    for k in range(len(ready) + 1):
        for chosen in combinations(ready, k):
            nat, rct = list(s.nat), list(s.rct)
            for i in chosen:
                t = ts.tasks[i - 1]
                nat[i - 1] = t.period
                rct[i - 1] = t.wcet(s.cri)
            who = sch(SystemState(tuple(nat), tuple(rct), s.cri))
            nat = [max(x - 1, 0) for x in nat]
            if who is not None:
                rct[who - 1] -= 1
            for theta in (False, True):
                out.add(_signal(ts, nat, rct, s.cri, who, theta))
    return out


def reachable_graph(ts: TaskSet, sch, start: SystemState = None) -> nx.DiGraph:
    start = mcx.initial_state(ts) if start is None else start
    graph = nx.DiGraph()
    graph.add_node(start)
    todo = [start]
    while todo:
        s = todo.pop()
        for target in successor_states(ts, s, sch):
            if target not in graph:
                todo.append(target)
            graph.add_edge(s, target)
    return graph


def doomed_states(ts: TaskSet, graph: nx.DiGraph) -> set[SystemState]:
    """States of the graph from which some deadline-miss state is reachable."""
    misses = [s for s in graph if is_miss(ts, s)]
    doomed = set(misses)
    for s in misses:
        doomed |= nx.ancestors(graph, s)
    return doomed


def verdict(ts: TaskSet, sch) -> str:
    graph = reachable_graph(ts, sch)
    return "Unsafe" if any(is_miss(ts, s) for s in graph) else "Safe"


def random_taskset(
    seed: int, n_max: int = 3, t_max: int = 4, implicit: bool = True
) -> TaskSet:
    """A small valid task set that passes due diligence."""
    rng = random.Random(seed)
    while True:
        rows = []
        for _ in range(rng.randint(1, n_max)):
            period = rng.randint(1, t_max)
            deadline = period if implicit else rng.randint(1, period)
            level = rng.choice(["LO", "HI"])
            c_lo = rng.randint(1, deadline)
            c_hi = rng.randint(c_lo, deadline) if level == "HI" else c_lo
            rows.append((c_lo, c_hi, deadline, period, level))
        ts = TaskSet.from_tuples(rows, name=f"random-{seed}")
        if mcx.due_diligence(ts):
            return ts


def random_state(rng: random.Random, ts: TaskSet) -> SystemState:
    """A well-formed (not necessarily reachable) state of ts."""
    cri = rng.choice([LO, HI])
    nat, rct = [], []
    for t in ts.tasks:
        nat.append(rng.randint(0, t.period))
        budget = t.c_lo if cri is LO else t.c_max
        rct.append(rng.randint(0, budget) if rng.random() < 0.6 else 0)
    return SystemState(tuple(nat), tuple(rct), cri)
