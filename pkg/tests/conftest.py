import random
from pathlib import Path

import pytest

from mfpx.oracle import ProjectionSplit, projected_dim
from mfpx.subdivision import PointConfiguration

INPUTS = Path(__file__).resolve().parent.parent / "inputs"


def triangle(d):
    """All lattice points of the dense triangle of size d in the plane."""
    return [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]


def random_config(rng: random.Random, *, max_n=5, max_k=2, max_points=5, box=3):
    """A random configuration with non-degenerate p-span."""
    while True:
        n = rng.randint(2, max_n)
        k = rng.randint(1, min(max_k, n - 1))
        sets = [[tuple(rng.randint(-box, box) for _ in range(n))
                 for _ in range(rng.randint(1, max_points))] for _ in range(k + 1)]
        config = PointConfiguration.from_sets(sets)
        split = ProjectionSplit(n, k)
        if projected_dim(config, split) == k:
            return config, split


@pytest.fixture
def inputs():
    return INPUTS


# ---------------------------------------------------------------------------
# acceptance criteria: one PASS/FAIL line each, printed in the terminal summary

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when not in ("setup", "call"):
        return
    number, title = marker.args
    if rep.when == "setup" and rep.passed:
        return
    prev = _CRITERIA.get(number, (title, True))
    _CRITERIA[number] = (title, prev[1] and rep.passed)
    status = "PASS" if rep.passed else "FAIL"
    print(f"\ncriterion {number} {status}: {title}")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
