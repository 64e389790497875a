from __future__ import annotations

import sys


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running property suite over instances")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
