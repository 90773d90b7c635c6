import pytest

from cgstp.instance import from_coords

TRI345 = [(0, 0), (30, 0), (0, 40)]
SQUARE10 = [(0, 0), (0, 10), (10, 10), (10, 0)]


@pytest.fixture
def tri345():
    return from_coords(TRI345, name="tri345")


@pytest.fixture
def square10():
    return from_coords(SQUARE10, name="square10")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
