import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, list] = {}  # number -> [title, all_passed]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        num, title = marker.args
        entry = _criteria.setdefault(num, [title, True])
        entry[1] = entry[1] and rep.outcome == "passed"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num, (title, ok) in sorted(_criteria.items()):
        flag = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{flag}] criterion {num:>2}: {title}")
