import json
import os

import pytest

DATA = os.path.join(os.path.dirname(__file__), "data")
CRITERIA = {}


@pytest.fixture(scope="session")
def reference():
    with open(os.path.join(DATA, "reference_equations.json")) as f:
        return json.load(f)


@pytest.fixture
def criterion():
    """criterion(number, title, ok, detail) records one line for the summary and asserts."""
    def record(number, title, ok, detail=""):
        CRITERIA[number] = (title, bool(ok), detail)
        line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}" + (f" ({detail})" if detail else "")
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        title, ok, detail = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:2d} [{'PASS' if ok else 'FAIL'}] {title}"
                                    + (f" ({detail})" if detail else ""))
