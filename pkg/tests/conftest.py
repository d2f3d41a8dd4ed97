import pytest

from effmordell.curve import Automorphism, SexticCurve, group_closure
from effmordell.fibre import FibreData
from effmordell.rational import RationalMatrix

EXAMPLE_MATRIX = [
    [-2, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, -2, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, -2, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, -2, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, -2, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, -2, 0, 1, 0],
    [1, 1, 1, 1, 0, 0, -3, 0, 1],
    [0, 0, 0, 0, 1, 1, 0, -2, 1],
    [0, 0, 0, 0, 0, 0, 1, 1, -2],
]
EXAMPLE_MULTIPLICITIES = (1, 1, 1, 1, 1, 1, 2, 2, 2)

EXAMPLE_POINTS = ["[1:-1:0]", "[1:1:0]", "[-1:-2:1]", "[-1:2:1]", "[1:-2:1]", "[1:2:1]", "[0:-1:1]", "[0:1:1]"]


@pytest.fixture
def example_fibre():
    return FibreData(2, EXAMPLE_MULTIPLICITIES, (0,) * 9, RationalMatrix(EXAMPLE_MATRIX))


@pytest.fixture
def two_component_fibre():
    return FibreData(3, (1, 1), (0, 0), RationalMatrix([[-3, 3], [3, -3]]))


@pytest.fixture
def example_curve():
    return SexticCurve((1, 0, 1, 0, 1, 0, 1))


@pytest.fixture
def generators():
    s = Automorphism(1, 0, 0, 1, -1)
    t = Automorphism(-1, 0, 0, 1, 1)
    u = Automorphism(0, 1, 1, 0, 1)
    return s, t, u


@pytest.fixture
def example_group(generators):
    return group_closure(generators)


_acceptance_results = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance_results[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _acceptance_results.items():
        name = nodeid.split("::")[-1]
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}")
