from fractions import Fraction
import math


def grid_range(f: "int | float | str", t: "int | float | str", s: "int | float | str") -> list:
    """The inclusive range [f;t;s] from f to t with step s.

    Decimal inputs are handled exactly, so the number of points does not depend on
    float rounding. Integer inputs give integers.

    Usage:

    >>> import mcx_tools as mcx
    >>> len(mcx.grid_range(0.8, 1, 0.01))
    21
    >>> mcx.grid_range(1, 3, 1)
    [1, 2, 3]
    """
    start, stop, step = (Fraction(str(v)) for v in (f, t, s))
    if step <= 0:
        raise ValueError(f"Grid step must be positive. User input: {s}")
    if start > stop:
        raise ValueError(f"Grid start must not exceed its end. User input: [{f};{t};{s}]")
    count = math.floor((stop - start) / step) + 1
    values = [start + k * step for k in range(count)]
    if all(isinstance(v, int) and not isinstance(v, bool) for v in (f, t, s)):
        return [int(v) for v in values]
    return [float(v) for v in values]
