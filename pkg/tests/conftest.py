import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES = []


def record(criterion, ok, detail=""):
    ACCEPTANCE_LINES.append(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(autouse=True, scope="session")
def _cache_dir(tmp_path_factory):
    import os

    os.environ.setdefault("WBWENO_CACHE", str(tmp_path_factory.mktemp("ref-cache")))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
