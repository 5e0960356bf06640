import pytest

from mcx_tools._src.utils.time import format_duration_ns, parse_duration
from mcx_tools._src.utils.workers import resolve_workers


@pytest.mark.parametrize(
    "text,seconds",
    [("900", 900.0), ("30s", 30.0), ("15m", 900.0), ("1h", 3600.0), ("2.5m", 150.0), (12, 12.0)],
)
def test_parse_duration(text, seconds):
    assert parse_duration(text) == seconds


@pytest.mark.parametrize("text", ["soon", "15 minutes", "-3", "0", 0])
def test_parse_duration_rejects(text):
    with pytest.raises(ValueError):
        parse_duration(text)


def test_format_duration_ns():
    assert format_duration_ns(2_500_000) == "2.5ms"
    assert format_duration_ns(3_000_000_000) == "3.00s"
    assert format_duration_ns(90 * 10**9) == "1.5m"


def test_resolve_workers(monkeypatch):
    monkeypatch.delenv("MCX_WORKERS", raising=False)
    assert resolve_workers() == 1
    assert resolve_workers(4) == 4
    monkeypatch.setenv("MCX_WORKERS", "3")
    assert resolve_workers() == 3
    assert resolve_workers(2) == 2
    monkeypatch.setenv("MCX_WORKERS", " ")
    assert resolve_workers() == 1


@pytest.mark.parametrize("raw", ["many", "0", "-2"])
def test_resolve_workers_rejects(monkeypatch, raw):
    monkeypatch.setenv("MCX_WORKERS", raw)
    with pytest.raises(ValueError, match="MCX_WORKERS"):
        resolve_workers()


def test_resolve_workers_rejects_explicit_zero():
    with pytest.raises(ValueError, match="argument"):
        resolve_workers(0)
