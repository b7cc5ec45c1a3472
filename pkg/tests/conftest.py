import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from roughsynth.colormap import render_function  # noqa: E402
from roughsynth.grid import AmplitudeRange  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def test_surface(x, y):
    return np.sin(x) + np.cos(2 * y)


test_surface.__test__ = False

SURFACE_RANGE = AmplitudeRange(-2.0, 2.0)


@pytest.fixture(scope="session")
def render_368():
    return render_function(test_surface, 368, 369, SURFACE_RANGE)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
