from __future__ import annotations

from hypothesis import settings

from tests.acceptance_log import RESULTS

settings.register_profile("ordex", max_examples=60, deadline=None)
settings.load_profile("ordex")


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS:
        terminalreporter.write_line(line)
