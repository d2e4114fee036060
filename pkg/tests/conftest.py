import pytest

from heatriemann.construct import SolutionType
from heatriemann.gas import PrimitiveState
from heatriemann.heating import HeatingContext

# name, ambient state, k, expected type, output time
TABLE1 = [
    ("Test1", (1.0, 0.8, 1.0), 0.2, SolutionType.TYPE1, 4.5),
    ("Test2", (1.0, 1.2, 1.0), 0.2, SolutionType.TYPE1, 4.5),
    ("Test3", (1.0, 1.8, 1.0), 0.2, SolutionType.TYPE2, 4.5),
    ("Test4", (1.0, 2.8, 1.0), 0.2, SolutionType.TYPE3, 2.5),
    ("Test5", (1.0, 2.8, 1.0), 2.0, SolutionType.TYPE2, 2.5),
]


def table1_case(name):
    for row in TABLE1:
        if row[0] == name:
            _, s, k, kind, t = row
            return PrimitiveState(*s), HeatingContext(1.4, k), kind, t
    raise KeyError(name)


@pytest.fixture(params=[row[0] for row in TABLE1])
def table1(request):
    return (request.param, *table1_case(request.param))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
