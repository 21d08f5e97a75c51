import os

import pytest

SLOW = os.environ.get("GRIDDOM_SLOW") == "1"

_CRITERIA: dict[tuple, str] = {}


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion for the summary."""

    def record(number: int, ok: bool, detail: str, part: str = "") -> None:
        label = f"{number}{part}"
        line = f"criterion {label:>3}: {'PASS' if ok else 'FAIL'}  {detail}"
        _CRITERIA[(number, part)] = line
        print(line)
        if not ok:
            pytest.fail(line, pytrace=False)

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[k])


def pytest_collection_modifyitems(config, items):
    if SLOW:
        return
    skip = pytest.mark.skip(reason="long-running; set GRIDDOM_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
