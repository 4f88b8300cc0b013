import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from semantrix import ActivityMatrix, generate_preset  # noqa: E402

EX1_ROWS = [[3, 3, 7, 7, 7], [7, 1, 1, 3, 3]]


@pytest.fixture
def ex1():
    return ActivityMatrix(np.array(EX1_ROWS), sigma=7, epoch=13 * 3600, interval_len=5)


@pytest.fixture(scope="session")
def month():
    return generate_preset("month", seed=7)


def random_matrix(rng, r, I, sigma=9, stickiness=0.7):
    """Random matrix with runs: each cell repeats its left neighbour with probability ``stickiness``."""
    cells = rng.integers(1, sigma + 1, (r, I))
    keep = rng.random((r, I)) < stickiness
    for i in range(1, I):
        cells[keep[:, i], i] = cells[keep[:, i], i - 1]
    return ActivityMatrix(cells, sigma=sigma)


_CRITERIA: list[str] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and rep.when == "call":
        status = "PASS" if rep.passed else "FAIL"
        _CRITERIA.append(f"{status}  criterion {marker.args[0]:>2}: {marker.args[1]} ({rep.duration:.2f}s)")


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
