import re

DURATION_UNITS = {"": 1.0, "s": 1.0, "m": 60.0, "h": 3600.0}

_DURATION_RE = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*([smh]?)\s*$")


def parse_duration(text: "str | int | float") -> float:
    """Parses a duration in seconds: `900`, `30s`, `15m`, `1h`, `2.5m`.

    Usage:

    >>> import mcx_tools as mcx
    >>> mcx.parse_duration("15m")
    900.0
    """
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        seconds = float(text)
    else:
        match = _DURATION_RE.match(str(text).lower())
        if match is None:
            msg = "Duration format is incorrect. Expected e.g. '900', '30s', '15m', '1h'."
            msg += f"\nInput: {text}"
            raise ValueError(msg)
        seconds = float(match.group(1)) * DURATION_UNITS[match.group(2)]
    if seconds <= 0:
        msg = "Duration must be positive."
        msg += f"\nInput: {text}"
        raise ValueError(msg)
    return seconds


def format_duration_ns(duration_ns: int) -> str:
    seconds = duration_ns / 1e9
    if seconds < 1:
        return f"{seconds * 1e3:.1f}ms"
    if seconds < 60:
        return f"{seconds:.2f}s"
    return f"{seconds / 60:.1f}m"
