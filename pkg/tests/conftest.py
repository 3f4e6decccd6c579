import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from windbound.curve import ClosedCurve  # noqa: E402
from windbound.geom import Point  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def square():
    return ClosedCurve([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def bowtie():
    return ClosedCurve([(0, 0), (1, 1), (1, 0), (0, 1)])


@pytest.fixture
def hexagon():
    # exact hexagon-like curve with rational vertices (regular up to rounding is not needed here)
    return ClosedCurve([(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)])


@pytest.fixture
def golden_dir():
    return GOLDEN


def pt(x, y):
    return Point(F(x), F(y))


# one line per acceptance criterion, filled in by test_acceptance and printed at the end
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
