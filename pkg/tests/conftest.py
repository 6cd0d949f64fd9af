import pytest

from benford2.solver import convergence_table

# (criterion number, title, passed, detail) tuples recorded by the
# acceptance tests; echoed after the run so every criterion gets one
# visible PASS/FAIL line regardless of output capturing.
ACCEPTANCE_RESULTS: list[tuple[int, str, bool, str]] = []


@pytest.fixture(scope="session")
def table10():
    """Convergence table through depth 10, shared across test modules."""
    return convergence_table(10)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        line = f"{status}  criterion {number}: {title}"
        if detail:
            line += f" [{detail}]"
        terminalreporter.write_line(line)
