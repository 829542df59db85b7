from fractions import Fraction as F

import pytest

from hyperzero.recurrence import SymbolParams

EXAMPLE_ONE = [
    (F(-27, 4), F(-7, 8), F(5, 2)),
    (F(-11), F(9), F(-8, 3)),
    (F(-26, 10), F(1), F(-1, 10)),
    (F(-2), F(2, 10), F(2, 10)),
    (F(-2), F(0), F(1, 3)),
    (F(-6), F(-4), F(-1)),
]

EXAMPLE_TWO = {
    "omega1": (F(-13, 4), F(1), F(-1, 5)),
    "omega2": (F(-9, 20), F(1), F(-1, 3)),
    "omega3": (F(3, 4), F(1), F(-1, 5)),
}

# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f": {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def params():
    def make(a, b, g):
        return SymbolParams(a, b, g)
    return make
