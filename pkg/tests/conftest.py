from pathlib import Path

import pytest

from greenrec.recurrence import RecurrenceSpec

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


@pytest.fixture
def problems_dir():
    return PROBLEMS


@pytest.fixture
def ex1():
    """f(n) - 2 f(n-1) + f(n-2) = r(n), declared constant with a_0=-1, a_1=2."""
    return RecurrenceSpec(["1", "-2", "1"], constant=[-1, 2])


@pytest.fixture
def ex3():
    """(2n-1) f(n) - 4n f(n-1) + (2n+1) f(n-2) = r(n)."""
    return RecurrenceSpec(["2*n - 1", "-4*n", "2*n + 1"])


def pytest_terminal_summary(terminalreporter):
    reports = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when == "call" and "test_acceptance.py::test_criterion_" in rep.nodeid:
                reports.append(rep)
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for rep in sorted(reports, key=lambda r: int(r.nodeid.split("test_criterion_")[1].split("_")[0])):
        name = rep.nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if rep.passed else 'FAIL'}  {name}")
