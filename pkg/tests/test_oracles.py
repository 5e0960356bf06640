import random

import pytest

import mcx_tools as mcx
from mcx_tools import Criticality, OracleKind, SystemState, Verdict, parse_state
from mcx_tools._src.oracles.oracles import PREDICATES, fires

import reference

LO, HI = Criticality.LO, Criticality.HI
UNSAFE_KINDS = [k for k in OracleKind if not k.is_safe]


def test_laxity(tau_a):
    s = parse_state("LO[11,00]")
    assert mcx.laxity(tau_a, s, 1) == 0
    assert mcx.worst_laxity(tau_a, s, 1) == -1
    late = parse_state("HI[21,00]")
    assert mcx.laxity(tau_a, late, 1) == -1
    assert mcx.worst_laxity(tau_a, late, 1) == -1


def test_laxity_needs_an_active_task(tau_a):
    with pytest.raises(ValueError, match="active"):
        mcx.laxity(tau_a, parse_state("LO[11,00]"), 2)
    with pytest.raises(ValueError):
        mcx.worst_laxity(tau_a, parse_state("LO[00,00]"), 1)


def test_demand(tau_a):
    s = parse_state("LO[11,00]")
    assert mcx.nj(tau_a, s, 1, 5, LO) == 2
    assert mcx.nj(tau_a, s, 2, 5, HI) == 0
    assert mcx.df(tau_a, s, 2, 4, LO) == 2
    busy = parse_state("LO[12,12]")
    assert mcx.df(tau_a, busy, 1, 2, HI) == 2
    assert mcx.df(tau_a, busy, 1, 1, HI) == 0
    assert mcx.dbf(tau_a, busy, 0, LO) == 0
    assert mcx.dbf(tau_a, busy, 2, LO) == 2
    assert mcx.dbf(tau_a, busy, 2, HI) == 2


def test_dbf_counts_every_task():
    ts = mcx.TaskSet.from_tuples([(2, 2, 2, 2, "LO"), (2, 2, 2, 2, "LO")])
    s = parse_state("LO[22,22]")
    assert mcx.dbf(ts, s, 2, LO) == 4
    assert fires("over-demand", ts, s)


def test_oracles_on_examples(tau_a):
    busy = parse_state("LO[12,12]")
    assert mcx.evaluate(tau_a, mcx.OracleSet.all(), busy).verdict is Verdict.UNKNOWN

    tight = parse_state("LO[11,11]")
    result = mcx.evaluate(tau_a, mcx.OracleSet.of(["sum-min-laxity"]), tight)
    assert result == mcx.OracleResult(Verdict.UNSAFE, OracleKind.SUM_MIN_LAXITY)
    result = mcx.evaluate(tau_a, mcx.OracleSet.all(), tight)
    assert result == mcx.OracleResult(Verdict.UNSAFE, OracleKind.NEG_WORST_LAXITY)

    idle = parse_state("HI[00,01]")
    result = mcx.evaluate(tau_a, mcx.OracleSet.all(), idle)
    assert result == mcx.OracleResult(Verdict.SAFE, OracleKind.HI_IDLE_POINT)
    assert mcx.evaluate(tau_a, mcx.OracleSet.none(), idle).verdict is Verdict.UNKNOWN


def test_unsafe_verdict_wins_over_safe(monkeypatch, tau_a):
    monkeypatch.setitem(PREDICATES, OracleKind.OVER_DEMAND, lambda ts, s: True)
    result = mcx.evaluate(tau_a, mcx.OracleSet.all(), parse_state("HI[00,00]"))
    assert result == mcx.OracleResult(Verdict.UNSAFE, OracleKind.OVER_DEMAND)


def test_oracle_set_parse():
    assert mcx.OracleSet.parse("none") == mcx.OracleSet.none()
    assert not mcx.OracleSet.parse("")
    everything = mcx.OracleSet.parse("ALL")
    assert everything.label == "all"
    assert everything.safe == (OracleKind.HI_IDLE_POINT,)
    assert len(everything.unsafe) == 6
    picked = mcx.OracleSet.parse("hi-over-demand, neg-laxity")
    assert picked.unsafe == (OracleKind.NEG_LAXITY, OracleKind.HI_OVER_DEMAND)
    assert picked.label == "neg-laxity,hi-over-demand"
    assert mcx.OracleSet.parse(picked) is picked
    with pytest.raises(ValueError, match="Unrecognized oracle"):
        mcx.OracleSet.parse("neg-laxity,psychic")


def test_evaluation_order():
    order = [k.value for k in mcx.OracleSet.all().kinds]
    assert order == [
        "hi-idle-point",
        "neg-laxity",
        "neg-worst-laxity",
        "sum-min-laxity",
        "sum-min-worst-laxity",
        "over-demand",
        "hi-over-demand",
    ]


@pytest.mark.parametrize("kind", ["edf", "edf-vd", "lwlf"])
@pytest.mark.parametrize("seed", range(20))
def test_oracles_agree_with_brute_force(kind, seed):
    ts = reference.random_taskset(seed)
    graph = reference.reachable_graph(ts, mcx.build_scheduler(kind, ts))
    doomed = reference.doomed_states(ts, graph)
    for s in graph:
        for oracle in UNSAFE_KINDS:
            if fires(oracle, ts, s):
                assert s in doomed, f"{oracle.value} flags {s}"
        if fires(OracleKind.HI_IDLE_POINT, ts, s):
            assert s not in doomed


@pytest.mark.parametrize("seed", range(20))
def test_oracle_closure_under_simulation(seed):
    ts = reference.random_taskset(seed, n_max=4, t_max=6)
    rng = random.Random(seed)
    for _ in range(100):
        big = reference.random_state(rng, ts)
        small = SystemState(
            tuple(
                n if r > 0 else rng.randint(n, t.period)
                for n, r, t in zip(big.nat, big.rct, ts.tasks)
            ),
            big.rct,
            big.cri,
        )
        assert mcx.simulates(small, big)
        for oracle in UNSAFE_KINDS:
            if fires(oracle, ts, small):
                assert fires(oracle, ts, big)
        if fires(OracleKind.HI_IDLE_POINT, ts, big):
            assert fires(OracleKind.HI_IDLE_POINT, ts, small)


@pytest.mark.parametrize("seed", range(20))
def test_oracle_strength(seed):
    ts = reference.random_taskset(seed, n_max=4, t_max=6)
    rng = random.Random(seed)
    for _ in range(100):
        s = reference.random_state(rng, ts)
        if s.cri is HI:
            # LO jobs are dropped on a mode change
            rct = tuple(r if t.level is HI else 0 for r, t in zip(s.rct, ts.tasks))
            s = SystemState(s.nat, rct, HI)
        if fires("neg-laxity", ts, s):
            assert fires("neg-worst-laxity", ts, s)
            assert fires("sum-min-laxity", ts, s)
            assert fires("over-demand", ts, s)
        if fires("sum-min-laxity", ts, s):
            assert fires("sum-min-worst-laxity", ts, s)
        if fires("neg-worst-laxity", ts, s):
            assert fires("sum-min-worst-laxity", ts, s)


def _horizons(ts, s):
    return [n - off for n, r, off in zip(s.nat, s.rct, ts.offsets) if r > 0]


@pytest.mark.parametrize("seed", range(20))
def test_hi_over_demand_needs_hi_demand(seed):
    ts = reference.random_taskset(seed, n_max=4, t_max=6)
    all_lo = mcx.TaskSet.from_tuples(
        [(t.c_lo, t.c_lo, t.deadline, t.period, "LO") for t in ts.tasks]
    )
    rng = random.Random(seed)
    hi_ids = [t.id for t in ts.tasks if t.level is HI]
    for _ in range(200):
        s = reference.random_state(rng, all_lo)
        if min(_horizons(all_lo, s), default=0) >= 0:
            assert not fires("hi-over-demand", all_lo, s)

        s = reference.random_state(rng, ts)
        horizons = _horizons(ts, s)
        if min(horizons, default=0) < 0:
            continue
        if all(mcx.df(ts, s, j, h, HI) == 0 for j in hi_ids for h in horizons):
            assert not fires("hi-over-demand", ts, s)


def test_hi_over_demand_ignores_far_hi_jobs(tau_a):
    # tau1's next deadline falls after tau2's
    s = parse_state("LO[02,11]")
    assert mcx.df(tau_a, s, 1, 1, HI) == 0
    assert not fires("hi-over-demand", tau_a, s)
