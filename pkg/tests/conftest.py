import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from borderbasis import terminal_span  # noqa: E402
from borderbasis.fixtures import load_row  # noqa: E402

_LINES = []


@functools.lru_cache(maxsize=None)
def row(name):
    """(system, span, canonical form) of a benchmark row, computed once per session."""
    s = load_row(name)
    span = terminal_span(s.polynomials, s.nvars)
    return s, span, span.canonical()


@pytest.fixture
def report():
    def emit(criterion, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
        _LINES.append(line)
        print(line)
        return ok
    return emit


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
