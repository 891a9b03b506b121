import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

# Acceptance lines recorded by test_acceptance.py and echoed in the summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


coord = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False, width=32)


def point_sets(m: int = 2, min_size: int = 0, max_size: int = 12):
    return st.lists(st.lists(coord, min_size=m, max_size=m), min_size=min_size, max_size=max_size)
