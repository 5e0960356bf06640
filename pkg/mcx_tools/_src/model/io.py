"""
io.py

Reading and writing task-set files.

File format (JSON, UTF-8):
    {"name": str?, "tasks": [{"c_lo": int, "c_hi": int, "deadline": int,
                              "period": int, "level": "LO" | "HI"}, ...]}

Field order is irrelevant, unknown fields are rejected and ids are assigned 1..n in
file order.

Functions:
- parse_taskset(obj, name) -> TaskSet
- load_taskset(path) -> TaskSet
- dump_taskset(ts, path) -> None
- taskset_to_dict(ts) -> dict
- list_taskset_files(directory) -> list[str]
"""

import glob
import json
import os
from typing import Any, Optional

from loguru import logger

from mcx_tools._src.model.tasks import Criticality, Task, TaskSet

TOP_LEVEL_FIELDS = {"name", "tasks"}
TASK_FIELDS = ("c_lo", "c_hi", "deadline", "period", "level")


class TaskSetFormatError(ValueError):
    """A task-set document does not follow the file format."""


def _require_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        msg = f"{where} must be an integer. "
        msg += f"User input: {value!r}"
        raise TaskSetFormatError(msg)
    return value


def parse_taskset(obj: Any, name: Optional[str] = None) -> TaskSet:
    """Builds a TaskSet from an already-decoded JSON document.

    Args:
        obj (Any): the decoded document
        name (str, optional): fallback name when the document has none

    Returns:
        TaskSet: the parsed task set (not validated against the model invariants)
    """
    if not isinstance(obj, dict):
        raise TaskSetFormatError(f"Task-set document must be an object, got {type(obj).__name__}")
    unknown = set(obj) - TOP_LEVEL_FIELDS
    if unknown:
        msg = "Unknown task-set fields. "
        msg += f"Allowed: {sorted(TOP_LEVEL_FIELDS)}. User input: {sorted(unknown)}"
        raise TaskSetFormatError(msg)
    if "tasks" not in obj or not isinstance(obj["tasks"], list):
        raise TaskSetFormatError("Task-set document requires a 'tasks' list")
    doc_name = obj.get("name", name)
    if doc_name is not None and not isinstance(doc_name, str):
        raise TaskSetFormatError(f"'name' must be a string. User input: {doc_name!r}")

    tasks = []
    for idx, entry in enumerate(obj["tasks"], start=1):
        where = f"task {idx}"
        if not isinstance(entry, dict):
            raise TaskSetFormatError(f"{where} must be an object")
        unknown = set(entry) - set(TASK_FIELDS)
        if unknown:
            msg = f"Unknown fields in {where}. "
            msg += f"Allowed: {list(TASK_FIELDS)}. User input: {sorted(unknown)}"
            raise TaskSetFormatError(msg)
        missing = [f for f in TASK_FIELDS if f not in entry]
        if missing:
            raise TaskSetFormatError(f"Missing fields in {where}: {missing}")
        try:
            level = Criticality.parse(entry["level"])
        except ValueError as err:
            raise TaskSetFormatError(f"{where}: {err}") from None
        tasks.append(
            Task(
                id=idx,
                c_lo=_require_int(entry["c_lo"], f"{where}.c_lo"),
                c_hi=_require_int(entry["c_hi"], f"{where}.c_hi"),
                deadline=_require_int(entry["deadline"], f"{where}.deadline"),
                period=_require_int(entry["period"], f"{where}.period"),
                level=level,
            )
        )
    return TaskSet(tasks=tuple(tasks), name=doc_name)


def load_taskset(path: str) -> TaskSet:
    """Loads a task set from a JSON file.

    Usage:

    >>> import mcx_tools as mcx
    >>> ts = mcx.load_taskset("tau_a.json")  # doctest: +SKIP
    """
    logger.debug(f"Loading task set: {path}")
    with open(path, encoding="utf-8") as f:
        try:
            obj = json.load(f)
        except json.JSONDecodeError as err:
            raise TaskSetFormatError(f"{path}: not valid JSON ({err})") from None
    fallback = os.path.splitext(os.path.basename(path))[0]
    return parse_taskset(obj, name=fallback)


def taskset_to_dict(ts: TaskSet) -> dict:
    doc: dict = {}
    if ts.name is not None:
        doc["name"] = ts.name
    doc["tasks"] = [
        {
            "c_lo": t.c_lo,
            "c_hi": t.c_hi,
            "deadline": t.deadline,
            "period": t.period,
            "level": t.level.name,
        }
        for t in ts.tasks
    ]
    return doc


def dump_taskset(ts: TaskSet, path: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(taskset_to_dict(ts), f, indent=2)
        f.write("\n")


def list_taskset_files(directory: str = "./") -> list[str]:
    """Lists every task-set file (*.json) below a directory, sorted."""
    files = glob.glob(os.path.join(directory, "**", "*.json"), recursive=True)
    return sorted(f for f in files if os.path.basename(f) != "manifest.json")
