"""
oracles.py

Per-state predicates that certify a state safe (it cannot reach a deadline miss) or
unsafe (it can). The antichain search uses them to stop expanding safe states and to
conclude early on unsafe ones.

Safe oracle:
- hi-idle-point: cri = HI and no task is active. Every HI job from here on starts
  from a synchronous-like release pattern that due diligence already covers.

Unsafe oracles, all quantified over active tasks:
- neg-laxity: some laxity < 0
- neg-worst-laxity: some worst laxity < 0
- sum-min-laxity: with laxities sorted ascending, some prefix sum l_k <= k - 2
- sum-min-worst-laxity: the same on worst laxities
- over-demand: ttd_i < dbf^cri(ttd_i)
- hi-over-demand: ttd_i < dbf^HI(ttd_i)

Evaluation goes from cheap to expensive and stops at the first hit:
hi-idle-point, neg-laxity, neg-worst-laxity, sum-min-laxity, sum-min-worst-laxity,
over-demand, hi-over-demand.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import accumulate
from typing import Callable, Iterable, Optional

from mcx_tools._src.model.tasks import Criticality, TaskSet
from mcx_tools._src.oracles.demand import dbf
from mcx_tools._src.oracles.laxity import laxities, worst_laxities
from mcx_tools._src.semantics.state import SystemState


class OracleKind(str, Enum):
    HI_IDLE_POINT = "hi-idle-point"
    NEG_LAXITY = "neg-laxity"
    NEG_WORST_LAXITY = "neg-worst-laxity"
    OVER_DEMAND = "over-demand"
    HI_OVER_DEMAND = "hi-over-demand"
    SUM_MIN_LAXITY = "sum-min-laxity"
    SUM_MIN_WORST_LAXITY = "sum-min-worst-laxity"

    @property
    def is_safe(self) -> bool:
        return self is OracleKind.HI_IDLE_POINT

    @classmethod
    def parse(cls, value: "str | OracleKind") -> "OracleKind":
        if isinstance(value, OracleKind):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            msg = "Unrecognized oracle. "
            msg += f"Must be one of {[k.value for k in cls]}, 'all' or 'none'. "
            msg += f"User input: {value}"
            raise ValueError(msg) from None


EVALUATION_ORDER = (
    OracleKind.HI_IDLE_POINT,
    OracleKind.NEG_LAXITY,
    OracleKind.NEG_WORST_LAXITY,
    OracleKind.SUM_MIN_LAXITY,
    OracleKind.SUM_MIN_WORST_LAXITY,
    OracleKind.OVER_DEMAND,
    OracleKind.HI_OVER_DEMAND,
)


@dataclass(frozen=True)
class OracleSet:
    safe: tuple[OracleKind, ...] = ()
    unsafe: tuple[OracleKind, ...] = ()

    @classmethod
    def of(cls, kinds: Iterable["str | OracleKind"]) -> "OracleSet":
        chosen = {OracleKind.parse(k) for k in kinds}
        ordered = [k for k in EVALUATION_ORDER if k in chosen]
        return cls(
            safe=tuple(k for k in ordered if k.is_safe),
            unsafe=tuple(k for k in ordered if not k.is_safe),
        )

    @classmethod
    def all(cls) -> "OracleSet":
        return cls.of(EVALUATION_ORDER)

    @classmethod
    def none(cls) -> "OracleSet":
        return cls()

    @classmethod
    def parse(cls, text: "str | OracleSet") -> "OracleSet":
        """Parses `all`, `none`, or a comma-separated list of oracle names.

        Usage:

        >>> import mcx_tools as mcx
        >>> mcx.OracleSet.parse("hi-over-demand,hi-idle-point").label
        'hi-idle-point,hi-over-demand'
        """
        if isinstance(text, OracleSet):
            return text
        text = text.strip().lower()
        if text in ("", "none"):
            return cls.none()
        if text == "all":
            return cls.all()
        return cls.of(part for part in text.split(",") if part.strip())

    @property
    def kinds(self) -> tuple[OracleKind, ...]:
        chosen = set(self.safe) | set(self.unsafe)
        return tuple(k for k in EVALUATION_ORDER if k in chosen)

    @property
    def label(self) -> str:
        kinds = self.kinds
        if not kinds:
            return "none"
        if len(kinds) == len(EVALUATION_ORDER):
            return "all"
        return ",".join(k.value for k in kinds)

    def __bool__(self) -> bool:
        return bool(self.safe or self.unsafe)


class Verdict(str, Enum):
    SAFE = "safe"
    UNSAFE = "unsafe"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class OracleResult:
    verdict: Verdict
    kind: Optional[OracleKind] = None


def hi_idle_point(ts: TaskSet, s: SystemState) -> bool:
    return s.cri is Criticality.HI and not any(s.rct)


def negative_laxity(ts: TaskSet, s: SystemState) -> bool:
    return any(x < 0 for x in laxities(ts, s))


def negative_worst_laxity(ts: TaskSet, s: SystemState) -> bool:
    return any(x < 0 for x in worst_laxities(ts, s))


def _sum_min(values: list[int]) -> bool:
    # l_k is the sum of the k smallest values
    return any(
        total <= k - 2
        for k, total in enumerate(accumulate(sorted(values)), start=1)
    )


def sum_min_laxity(ts: TaskSet, s: SystemState) -> bool:
    return _sum_min(laxities(ts, s))


def sum_min_worst_laxity(ts: TaskSet, s: SystemState) -> bool:
    return _sum_min(worst_laxities(ts, s))


def _over_demand(ts: TaskSet, s: SystemState, alpha: Criticality) -> bool:
    for i, (n, r, off) in enumerate(zip(s.nat, s.rct, ts.offsets), start=1):
        if r == 0:
            continue
        horizon = n - off
        if horizon < dbf(ts, s, horizon, alpha):
            return True
    return False


def over_demand(ts: TaskSet, s: SystemState) -> bool:
    return _over_demand(ts, s, s.cri)


def hi_over_demand(ts: TaskSet, s: SystemState) -> bool:
    return _over_demand(ts, s, Criticality.HI)


PREDICATES: dict[OracleKind, Callable[[TaskSet, SystemState], bool]] = {
    OracleKind.HI_IDLE_POINT: hi_idle_point,
    OracleKind.NEG_LAXITY: negative_laxity,
    OracleKind.NEG_WORST_LAXITY: negative_worst_laxity,
    OracleKind.SUM_MIN_LAXITY: sum_min_laxity,
    OracleKind.SUM_MIN_WORST_LAXITY: sum_min_worst_laxity,
    OracleKind.OVER_DEMAND: over_demand,
    OracleKind.HI_OVER_DEMAND: hi_over_demand,
}


def fires(kind: "str | OracleKind", ts: TaskSet, s: SystemState) -> bool:
    """Evaluates a single oracle predicate."""
    return PREDICATES[OracleKind.parse(kind)](ts, s)


def first_safe(ts: TaskSet, oracles: OracleSet, s: SystemState) -> Optional[OracleKind]:
    for kind in oracles.safe:
        if PREDICATES[kind](ts, s):
            return kind
    return None


def first_unsafe(
    ts: TaskSet, oracles: OracleSet, s: SystemState
) -> Optional[OracleKind]:
    for kind in oracles.unsafe:
        if PREDICATES[kind](ts, s):
            return kind
    return None


def evaluate(ts: TaskSet, oracles: OracleSet, s: SystemState) -> OracleResult:
    """Runs the enabled oracles on a state.

    Args:
        ts (TaskSet): the task set
        oracles (OracleSet): the enabled oracles
        s (SystemState): the state

    Returns:
        OracleResult: UNSAFE with the first unsafe oracle that fires, else SAFE with
            the safe oracle that fires, else UNKNOWN

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.TaskSet.from_tuples([(1, 2, 2, 2, "HI"), (1, 1, 2, 2, "LO")])
    >>> mcx.evaluate(ts, mcx.OracleSet.all(), mcx.parse_state("LO[12,12]")).verdict.value
    'unknown'
    """
    kind = first_unsafe(ts, oracles, s)
    if kind is not None:
        return OracleResult(Verdict.UNSAFE, kind)
    kind = first_safe(ts, oracles, s)
    if kind is not None:
        return OracleResult(Verdict.SAFE, kind)
    return OracleResult(Verdict.UNKNOWN)
