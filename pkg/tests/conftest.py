from __future__ import annotations

import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_outcomes: dict[int, list[tuple[str, bool]]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)\w*", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(int(m.group(1)), []).append((report.nodeid.split("::")[-1], report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        parts = _outcomes[num]
        ok = all(p for _, p in parts)
        failed = [name for name, p in parts if not p]
        detail = "" if ok else "  (failing: " + ", ".join(failed) + ")"
        terminalreporter.write_line(f"ACCEPTANCE criterion {num}: {'PASS' if ok else 'FAIL'}{detail}")
