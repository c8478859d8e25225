"""Collects acceptance-criterion outcomes and prints one PASS/FAIL line each."""

import pytest

_OUTCOMES: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    _OUTCOMES[number] = ("PASS" if report.passed else "FAIL", title, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        status, title, duration = _OUTCOMES[number]
        terminalreporter.write_line(f"{status} criterion {number:>2}: {title} ({duration:.1f} s)")
