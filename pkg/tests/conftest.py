import json
import sys

from loguru import logger
import pytest

import mcx_tools as mcx

TAU_A_ROWS = [(1, 2, 2, 2, "HI"), (1, 1, 2, 2, "LO")]


@pytest.fixture
def tau_a() -> mcx.TaskSet:
    """{tau1 = <<1,2>,2,2,HI>, tau2 = <<1,1>,2,2,LO>}"""
    return mcx.TaskSet.from_tuples(TAU_A_ROWS, name="tau_a")


@pytest.fixture
def overloaded() -> mcx.TaskSet:
    """A single HI task that cannot meet its deadline at C(HI)."""
    return mcx.TaskSet.from_tuples([(2, 3, 2, 2, "HI")], name="overloaded")


@pytest.fixture
def tau_a_file(tmp_path, tau_a) -> str:
    path = tmp_path / "tau_a.json"
    mcx.dump_taskset(tau_a, str(path))
    return str(path)


@pytest.fixture
def overloaded_file(tmp_path) -> str:
    path = tmp_path / "overloaded.json"
    doc = {"tasks": [{"c_lo": 2, "c_hi": 3, "deadline": 2, "period": 2, "level": "HI"}]}
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


@pytest.fixture(autouse=True)
def _reset_logger():
    yield
    logger.remove()
    logger.add(sys.stderr, level="WARNING")
