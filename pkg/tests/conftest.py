import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    """Record one PASS/FAIL line per acceptance criterion."""

    def log(number: int, title: str, ok: bool, detail: str) -> None:
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        print(line)
        _LINES.append(line)

    return log


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
