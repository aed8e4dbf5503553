from __future__ import annotations

from pathlib import Path

import pytest

from zetacheck.ledger import BaseData

FIXTURES = Path(__file__).parent / "data" / "fixtures.json"


@pytest.fixture(scope="session")
def fixture_path() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def data() -> BaseData:
    return BaseData.default([FIXTURES])


@pytest.fixture(scope="session")
def shipped() -> BaseData:
    return BaseData.default()


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k, title, ok, elapsed, limit, note in sorted(RESULTS):
        status = "PASS" if ok else "FAIL"
        line = f"criterion {k:>2} {status}  {elapsed:6.2f}s / {limit:g}s  {title}"
        terminalreporter.write_line(line + (f"  ({note})" if note else ""))
