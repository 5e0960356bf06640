import random

import pytest

import mcx_tools as mcx
from mcx_tools import Criticality, SystemState, parse_state
from mcx_tools._src.semantics.state import (
    active,
    check_state,
    completed,
    eligible,
    is_deadline_miss,
    ttd,
)

import reference


def test_initial_state(tau_a):
    s = mcx.initial_state(tau_a)
    assert str(s) == "LO[00,00]"
    assert not is_deadline_miss(tau_a, s)


def test_initial_state_empty_taskset():
    s = mcx.initial_state(mcx.TaskSet())
    assert s == SystemState((), (), Criticality.LO)
    assert str(s) == "LO[]"


def test_ttd(tau_a):
    assert ttd(tau_a, parse_state("LO[01,00]"), 1) == 1
    ts = mcx.TaskSet.from_tuples([(1, 1, 3, 5, "LO")])
    assert ttd(ts, SystemState((2,), (0,)), 1) == 0
    assert ttd(ts, SystemState((0,), (0,)), 1) == -2


def test_task_status_sets(tau_a):
    s = parse_state("LO[00,00]")
    assert active(s) == frozenset()
    assert eligible(tau_a, s) == {1, 2}
    assert completed(tau_a, s) == {2}
    assert eligible(tau_a, parse_state("HI[00,00]")) == {1}
    busy = parse_state("LO[12,12]")
    assert active(busy) == {1, 2}
    assert eligible(tau_a, busy) == frozenset()


def test_is_deadline_miss(tau_a):
    assert is_deadline_miss(tau_a, parse_state("LO[10,00]"))
    assert not is_deadline_miss(tau_a, parse_state("LO[12,12]"))
    assert not is_deadline_miss(tau_a, parse_state("HI[01,02]"))


def test_release(tau_a):
    v0 = parse_state("LO[00,00]")
    assert str(mcx.release(tau_a, v0, {1})) == "LO[12,00]"
    assert mcx.release(tau_a, v0, set()) == v0
    s = mcx.release(tau_a, parse_state("HI[00,00]"), {1})
    assert s.rct[0] == 2 and s.nat[0] == 2 and s.cri is Criticality.HI


def test_release_rejects_ineligible(tau_a):
    with pytest.raises(mcx.InvalidTransitionError, match="User input"):
        mcx.release(tau_a, parse_state("LO[12,12]"), {1})
    with pytest.raises(mcx.InvalidTransitionError):
        mcx.release(tau_a, parse_state("HI[00,00]"), {2})


def test_run(tau_a):
    assert str(mcx.run(tau_a, parse_state("LO[12,12]"), 1)) == "LO[01,11]"
    assert str(mcx.run(tau_a, parse_state("HI[22,00]"), 1)) == "HI[11,00]"
    assert mcx.run(tau_a, parse_state("LO[00,00]"), None) == parse_state("LO[00,00]")
    with pytest.raises(mcx.InvalidTransitionError):
        mcx.run(tau_a, parse_state("LO[00,00]"), 1)


def test_signal(tau_a):
    s = parse_state("LO[01,11]")
    assert str(mcx.signal(tau_a, s, 1, False)) == "HI[11,01]"
    assert mcx.signal(tau_a, s, 1, True) == s
    assert mcx.signal(tau_a, s, 2, False) == s
    assert str(mcx.signal(tau_a, parse_state("HI[11,00]"), 1, True)) == "HI[01,00]"
    assert mcx.signal(tau_a, s, None, False) == s


def test_signal_on_completed_task_is_identity(tau_a):
    s = parse_state("LO[01,01]")
    assert mcx.signal(tau_a, s, 2, False) == s
    assert mcx.signal(tau_a, s, 2, True) == s


def test_signal_rejects_unknown_task(tau_a):
    with pytest.raises(mcx.InvalidTransitionError):
        mcx.signal(tau_a, parse_state("LO[00,00]"), 3, False)


def test_mode_change_keeps_active_hi_jobs():
    ts = mcx.TaskSet.from_tuples([(1, 3, 4, 4, "HI"), (1, 2, 4, 4, "HI"), (1, 1, 4, 4, "LO")])
    s = SystemState(nat=(3, 3, 3), rct=(0, 1, 1), cri=Criticality.LO)
    after = mcx.signal(ts, s, 1, False)
    assert after == SystemState(nat=(3, 3, 3), rct=(2, 2, 0), cri=Criticality.HI)


def test_successors_initial(tau_a):
    sch = mcx.build_scheduler("edf-vd", tau_a)
    v0 = mcx.initial_state(tau_a)
    targets = {str(s) for _, s in mcx.successors(tau_a, v0, sch)}
    assert targets == {"LO[00,00]", "LO[01,00]", "HI[11,00]", "LO[00,01]", "LO[01,11]", "HI[11,01]"}
    assert {s for _, s in mcx.successors(tau_a, v0, sch)} == reference.successor_states(
        tau_a, v0, sch
    )


def test_successors_without_dedup_counts_every_combination(tau_a):
    sch = mcx.build_scheduler("edf-vd", tau_a)
    edges = mcx.successors(tau_a, mcx.initial_state(tau_a), sch, dedup=False)
    assert len(edges) == 2**2 * 2
    assert [sorted(label.released) for label, _ in edges[::2]] == [[], [1], [2], [1, 2]]
    assert [label.signaled for label, _ in edges[:2]] == [False, True]


def test_successors_of_a_quiet_state_is_itself():
    ts = mcx.TaskSet.from_tuples([(1, 1, 2, 2, "LO")])
    s = SystemState(nat=(0,), rct=(0,), cri=Criticality.HI)
    edges = mcx.successors(ts, s, mcx.build_scheduler("edf", ts))
    assert [target for _, target in edges] == [s]
    assert str(edges[0][0]) == "released={} ran=none theta=0"


def test_successors_are_deterministic(tau_a):
    sch = mcx.build_scheduler("lwlf", tau_a)
    s = parse_state("LO[00,00]")
    assert mcx.successors(tau_a, s, sch) == mcx.successors(tau_a, s, sch)


def test_periodic_successors_release_every_eligible_task(tau_a):
    sch = mcx.build_scheduler("edf-vd", tau_a)
    edges = mcx.successors(tau_a, mcx.initial_state(tau_a), sch, periodic=True)
    assert {str(s) for _, s in edges} == {"HI[11,01]", "LO[01,11]"}
    assert all(label.released == {1, 2} for label, _ in edges)


@pytest.mark.parametrize("seed", range(15))
@pytest.mark.parametrize("kind", ["edf", "edf-vd", "lwlf"])
def test_successors_match_reference(seed, kind):
    ts = reference.random_taskset(seed)
    sch = mcx.build_scheduler(kind, ts)
    graph = reference.reachable_graph(ts, sch)
    for s in list(graph)[:40]:
        assert {t for _, t in mcx.successors(ts, s, sch)} == set(graph.successors(s))


@pytest.mark.parametrize("seed", range(15))
def test_reachable_states_are_well_formed(seed):
    ts = reference.random_taskset(seed)
    sch = mcx.build_scheduler("edf-vd", ts)
    graph = reference.reachable_graph(ts, sch)
    for s in graph:
        assert check_state(ts, s) == []
    for src, dst in graph.edges:
        if src.cri is Criticality.HI:
            assert dst.cri is Criticality.HI
        for t, n_src, n_dst in zip(ts.tasks, src.nat, dst.nat):
            assert n_dst <= max(n_src, t.period - 1)


@pytest.mark.parametrize("seed", range(15))
def test_signal_case_split(seed):
    ts = reference.random_taskset(seed)
    sch = mcx.build_scheduler("edf", ts)
    for s in reference.reachable_graph(ts, sch):
        for who in [None, *sorted(active(s))]:
            s_rn = mcx.run(ts, s, who)
            quiet = mcx.signal(ts, s_rn, who, False)
            loud = mcx.signal(ts, s_rn, who, True)
            if who is None or who in completed(ts, s_rn):
                assert quiet == loud == s_rn
            else:
                assert (quiet != s_rn) != (loud != s_rn)


def test_check_state_flags_broken_invariants(tau_a):
    assert check_state(tau_a, parse_state("LO[12,12]")) == []
    assert check_state(tau_a, parse_state("LO[20,00]"))
    assert check_state(tau_a, parse_state("HI[13,00]"))
    assert check_state(tau_a, parse_state("LO[00]"))


def test_render_and_parse_state():
    s = SystemState(nat=(10, 0), rct=(1, 0), cri=Criticality.HI)
    assert str(s) == "HI[1/10,0/0]"
    assert parse_state("HI[1/10,0/0]") == s
    assert parse_state("HI[1/2,0/0]") == SystemState((2, 0), (1, 0), Criticality.HI)
    assert parse_state(str(parse_state("LO[12,01]"))) == parse_state("LO[12,01]")
    for text in ("MID[00]", "LO[0]", "LO[a/b]", "LO(00)"):
        with pytest.raises(ValueError):
            parse_state(text)


def test_states_order_by_encoding():
    rng = random.Random(3)
    states = [
        SystemState(
            tuple(rng.randint(0, 300) for _ in range(2)),
            tuple(rng.randint(0, 3) for _ in range(2)),
            rng.choice(list(Criticality)),
        )
        for _ in range(50)
    ]
    assert sorted(states) == sorted(states, key=SystemState.encode)
    assert len({s.encode() for s in states}) == len(set(states))


def test_automaton(tau_a):
    automaton = mcx.Automaton(tau_a, mcx.build_scheduler("edf-vd", tau_a))
    assert automaton.initial == parse_state("LO[00,00]")
    assert automaton.is_failure(parse_state("HI[10,00]"))
    assert len(automaton.successors(automaton.initial)) == 6


def test_encoding_handles_long_periods():
    small = SystemState(nat=(65535, 0), rct=(1, 0))
    big = SystemState(nat=(70000, 0), rct=(1, 0))
    assert small < big
    assert small.encode() != big.encode()
    assert len(big.encode()) == len(small.encode())


def test_automaton_steps(tau_a):
    automaton = mcx.Automaton(tau_a, mcx.build_scheduler("edf-vd", tau_a))
    steps = automaton.steps(automaton.initial)
    plain = mcx.successors(tau_a, automaton.initial, automaton.scheduler, dedup=False)
    assert len(steps) == 2 * len(plain)
    kinds = [str(step).split("=")[0] for _, step, _ in steps]
    assert kinds[:4] == ["release", "run", "signal", "signal"]
    composed = {dst for _, dst in automaton.successors(automaton.initial)}
    signaled = {dst for _, step, dst in steps if step.kind == "signal"}
    assert signaled == composed
