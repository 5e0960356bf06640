import os
from typing import Optional

WORKERS_ENV = "MCX_WORKERS"


def resolve_workers(explicit: Optional[int] = None) -> int:
    """Worker count: the explicit value, else $MCX_WORKERS, else 1."""
    if explicit is not None:
        value, source = explicit, "argument"
    else:
        raw = os.getenv(WORKERS_ENV)
        if raw is None or raw.strip() == "":
            return 1
        try:
            value = int(raw)
        except ValueError:
            msg = f"{WORKERS_ENV} must be a positive integer. "
            msg += f"User input: {raw}"
            raise ValueError(msg) from None
        source = WORKERS_ENV
    if value < 1:
        raise ValueError(f"Worker count from {source} must be at least 1. User input: {value}")
    return value
