"""Session plumbing: surface acceptance verdict lines in the run summary.

pytest captures stdout at the file-descriptor level, so passing tests would
otherwise swallow their PASS lines; the terminal-summary hook is the one
channel that always reaches the log.
"""

from __future__ import annotations

import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log() -> list[str]:
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
