import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from entangle.io import read_graph  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def fig1():
    return read_graph(str(FIXTURES / "fig1.edges"))


@pytest.fixture(scope="session")
def d14():
    return read_graph(str(FIXTURES / "d14.edges"))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
