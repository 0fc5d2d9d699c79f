import contextlib
import time

import pytest
from hypothesis import HealthCheck, settings

# Derandomized so repeated runs are identical.
settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """``with criterion(n, title, budget_s):`` records one PASS/FAIL line."""

    @contextlib.contextmanager
    def run(number: int, title: str, budget: float | None = None):
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - start
            if budget is not None:
                assert elapsed < budget, f"runtime {elapsed:.2f} s exceeds {budget} s"
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            limit = f" (limit {budget:g} s)" if budget is not None else ""
            line = f"criterion {number:2d}: {status}  {title}  [{elapsed:.2f} s{limit}]"
            _ACCEPTANCE_LINES.append(line)
            print(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
