import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

# (number, title, passed, detail) collected by the acceptance tests
ACCEPTANCE_RESULTS = []


@pytest.fixture
def acceptance():
    def record(number: int, title: str, passed: bool, detail: str = ""):
        ACCEPTANCE_RESULTS.append((number, title, passed, detail))
        print(f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} {detail}".rstrip())
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: r[0]):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
