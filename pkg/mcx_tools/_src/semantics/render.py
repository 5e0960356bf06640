"""
render.py

Debug rendering of states and transition labels.

Compact form `LO[12,01]` lists, per task, the rct digit followed by the nat digit.
It is used when there are at most 9 tasks and every value is a single digit.
Otherwise the general form `LO[1/2,0/1]` (rct/nat per task) is used.
"""

import re
from typing import Optional

from mcx_tools._src.model.tasks import Criticality
from mcx_tools._src.semantics.state import SystemState

_STATE_RE = re.compile(r"^\s*(LO|HI)\s*\[(.*)\]\s*$")


def _is_compact(s: SystemState) -> bool:
    return s.n <= 9 and all(v <= 9 for v in s.rct + s.nat)


def render_state(s: SystemState) -> str:
    if _is_compact(s):
        cells = [f"{r}{n}" for r, n in zip(s.rct, s.nat)]
    else:
        cells = [f"{r}/{n}" for r, n in zip(s.rct, s.nat)]
    return f"{s.cri.name}[{','.join(cells)}]"


def parse_state(text: str) -> SystemState:
    """Inverse of `render_state`; accepts both the compact and the general form.

    Usage:

    >>> import mcx_tools as mcx
    >>> mcx.parse_state("HI[11,01]").rct
    (1, 0)
    """
    match = _STATE_RE.match(text)
    if match is None:
        msg = "Unrecognized state. Expected e.g. 'LO[12,00]' or 'HI[1/2,0/0]'. "
        msg += f"User input: {text}"
        raise ValueError(msg)
    cri = Criticality[match.group(1)]
    body = match.group(2).strip()
    rct, nat = [], []
    for cell in body.split(",") if body else []:
        cell = cell.strip()
        if "/" in cell:
            r, _, n = cell.partition("/")
        elif len(cell) == 2 and cell.isdigit():
            r, n = cell[0], cell[1]
        else:
            raise ValueError(f"Unrecognized task cell {cell!r} in state {text!r}")
        try:
            rct.append(int(r))
            nat.append(int(n))
        except ValueError:
            raise ValueError(f"Unrecognized task cell {cell!r} in state {text!r}") from None
    return SystemState(nat=tuple(nat), rct=tuple(rct), cri=cri)


def render_label(label) -> str:
    """`released={1,2} ran=1 theta=0` for a TransitionLabel."""
    ids = ",".join(str(i) for i in sorted(label.released))
    ran: Optional[int] = label.ran
    who = "none" if ran is None else str(ran)
    return f"released={{{ids}}} ran={who} theta={int(label.signaled)}"


def render_step(step) -> str:
    """`release={1,2}`, `run=1` or `signal=1 theta=0` for a StepLabel."""
    if step.kind == "release":
        ids = ",".join(str(i) for i in sorted(step.released))
        return f"release={{{ids}}}"
    who = "none" if step.ran is None else str(step.ran)
    if step.kind == "run":
        return f"run={who}"
    return f"signal={who} theta={int(step.signaled)}"
