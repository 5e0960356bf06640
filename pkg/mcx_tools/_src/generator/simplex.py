"""
simplex.py

Random utilization vectors with a fixed sum and per-component bounds.

sample_bounded_simplex draws u with sum(u) = total and lo_i <= u_i <= hi_i. The free
part u - lo lives on a simplex of size total - sum(lo) cut by the box [0, hi - lo]:

1. rejection: a flat Dirichlet draw on the uncut simplex is kept if it fits the box,
   which makes accepted draws uniform on the cut simplex;
2. rescale-and-clamp: after `max_tries` rejections, the last draw is clamped to the
   box and the overflow is handed to components with room left, in proportion to
   that room, until nothing overflows.

Outputs are exact Fractions: each component is rounded to a denominator of at most
10**6, then the residual is absorbed by components with room so the sum is exact.
"""

from fractions import Fraction
from typing import Sequence

from loguru import logger
import numpy as np

MAX_DENOMINATOR = 10**6


class InfeasibleBoundsError(ValueError):
    """sum(lo) <= total <= sum(hi) does not hold."""


def _rescale_and_clamp(x: np.ndarray, cap: np.ndarray, slack: float) -> np.ndarray:
    x = np.minimum(x, cap)
    for _ in range(len(x) + 1):
        overflow = slack - x.sum()
        room = cap - x
        if overflow <= 1e-15 or room.sum() <= 0:
            break
        x = np.minimum(x + overflow * room / room.sum(), cap)
    return x


def _repair_sum(
    u: list[Fraction], lo: Sequence[Fraction], hi: Sequence[Fraction], total: Fraction
) -> list[Fraction]:
    diff = total - sum(u)
    for i in range(len(u)):
        if diff == 0:
            break
        room = hi[i] - u[i] if diff > 0 else lo[i] - u[i]
        step = min(diff, room) if diff > 0 else max(diff, room)
        u[i] += step
        diff -= step
    return u


def sample_bounded_simplex(
    n: int,
    total: "Fraction | float",
    lo: Sequence["Fraction | float"],
    hi: Sequence["Fraction | float"],
    rng: np.random.Generator,
    max_tries: int = 1000,
) -> list[Fraction]:
    """Draws n utilizations summing to `total` within [lo_i, hi_i].

    Args:
        n (int): number of components
        total (Fraction | float): the exact sum
        lo (Sequence): lower bounds
        hi (Sequence): upper bounds
        rng (np.random.Generator): random source
        max_tries (int): rejection attempts before rescale-and-clamp

    Returns:
        list[Fraction]: the utilization vector

    Usage:

    >>> import numpy as np
    >>> import mcx_tools as mcx
    >>> mcx.sample_bounded_simplex(1, 0.5, [0], [1], np.random.default_rng(0))
    [Fraction(1, 2)]
    """
    total = Fraction(total)
    lo = [Fraction(v) for v in lo]
    hi = [Fraction(v) for v in hi]
    if len(lo) != n or len(hi) != n:
        msg = f"Bounds must have {n} components. "
        msg += f"User input: {len(lo)} lower, {len(hi)} upper"
        raise ValueError(msg)
    if any(a > b for a, b in zip(lo, hi)):
        raise InfeasibleBoundsError(f"Some lower bound exceeds its upper bound: {lo} vs {hi}")
    if not sum(lo) <= total <= sum(hi):
        msg = "Infeasible simplex bounds. "
        msg += f"Need {float(sum(lo)):.6f} <= total <= {float(sum(hi)):.6f}. "
        msg += f"User input: total={float(total):.6f}"
        raise InfeasibleBoundsError(msg)

    slack = total - sum(lo)
    caps = [b - a for a, b in zip(lo, hi)]
    free = [i for i, c in enumerate(caps) if c > 0]
    if slack == 0 or not free:
        return list(lo)
    if slack == sum(caps):
        return list(hi)

    cap = np.array([float(caps[i]) for i in free])
    fslack = float(slack)
    x = fslack * rng.dirichlet(np.ones(len(free)))
    for _ in range(max_tries - 1):
        if np.all(x <= cap):
            break
        x = fslack * rng.dirichlet(np.ones(len(free)))
    if not np.all(x <= cap):
        logger.debug("Simplex rejection budget exhausted, falling back to rescale-and-clamp")
        x = _rescale_and_clamp(x, cap, fslack)

    u = list(lo)
    for k, i in enumerate(free):
        v = lo[i] + Fraction(float(x[k])).limit_denominator(MAX_DENOMINATOR)
        u[i] = min(max(v, lo[i]), hi[i])
    return _repair_sum(u, lo, hi, total)
