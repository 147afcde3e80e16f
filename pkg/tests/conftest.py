import time
from contextlib import contextmanager

import pytest

_CRITERIA = {}


@contextmanager
def _record(number, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        _CRITERIA[number] = ("FAIL", title, time.perf_counter() - start, f"{type(exc).__name__}: {exc}")
        raise
    _CRITERIA[number] = ("PASS", title, time.perf_counter() - start, "")


@pytest.fixture
def criterion():
    """``with criterion(3, "title"):`` records a PASS/FAIL line for the summary."""
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, title, secs, detail = _CRITERIA[number]
        line = f"[{status}] criterion {number:2d}: {title} ({secs:.2f}s)"
        if detail:
            line += f" -- {detail.splitlines()[0][:160]}"
        tr.write_line(line)
    passed = sum(v[0] == "PASS" for v in _CRITERIA.values())
    tr.write_line(f"{passed}/{len(_CRITERIA)} criteria passed")
