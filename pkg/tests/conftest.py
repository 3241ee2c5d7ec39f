import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Log one pass/fail line per acceptance criterion, printed in the terminal summary."""

    def _record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
