import random

import pytest

# Lines recorded by the acceptance suite, echoed after the run so that they
# survive pytest's output capture.
ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return random.Random(20240)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
