import re
from pathlib import Path

import pytest

from adaptive_ramsey import default_kb

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def kb():
    return default_kb()


@pytest.fixture
def k16_fixture():
    return ROOT / "fixtures" / "k16-3col.txt"


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" or "test_acceptance" not in rep.nodeid:
                continue
            m = re.search(r"test_criterion_(\d+)_(\w+)", rep.nodeid)
            if m:
                lines.append((int(m.group(1)), outcome.upper()[:4], m.group(2).replace("_", " ")))
    if lines:
        terminalreporter.section("acceptance criteria")
        for num, status, name in sorted(lines):
            terminalreporter.write_line(f"[{status}] criterion {num:2d}: {name}")
