import pytest

from stieltjes.numerics import PrecisionContext

ACCEPTANCE_LINES = []


@pytest.fixture
def ctx():
    return PrecisionContext()


@pytest.fixture
def ctx2():
    """Doubled precision for back-substitution oracles."""
    return PrecisionContext(512)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
