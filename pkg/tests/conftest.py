import importlib.util
import sys

import pytest

from bramsey.satbridge import SolverHarness


def _default_harness():
    harness = SolverHarness.from_env()
    if harness is not None:
        return harness
    if importlib.util.find_spec("pysat") is not None:
        return SolverHarness(f"{sys.executable} -m bramsey.pysat_runner {{cnf_path}}")
    return None


@pytest.fixture(scope="session")
def harness():
    h = _default_harness()
    if h is None:
        pytest.skip("no SAT solver: set BRAMSEY_SOLVER_CMD or install python-sat")
    return h


def small_specs(max_m=4, max_n=6, max_a=2, max_s=3, max_edges=24):
    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            if m * n > max_edges:
                continue
            for a in range(1, max_a + 1):
                for s in range(1, max_s + 1):
                    yield m, n, a, s


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
