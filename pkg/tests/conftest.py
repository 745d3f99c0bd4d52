"""Shared pytest hooks for the acceptance report.

The acceptance tests record one human-readable PASS/FAIL line per
criterion; ``pytest_terminal_summary`` runs after output capture is
released, so the lines always reach the terminal regardless of
capture mode.
"""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
