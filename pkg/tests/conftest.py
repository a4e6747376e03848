"""Shared pytest hooks.

The acceptance tests register one PASS/FAIL line each; echoing them in the
terminal summary keeps the full scorecard visible even though pytest
captures per-test output.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
