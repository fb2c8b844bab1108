import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    key = marker.args[0]
    status = "PASS" if rep.passed else "FAIL"
    if CRITERIA.get(key) != "FAIL":
        CRITERIA[key] = status


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test covers")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=lambda k: int(k.split()[0])):
        terminalreporter.write_line(f"{CRITERIA[key]}  criterion {key}")
