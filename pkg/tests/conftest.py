"""Collects acceptance-criterion outcomes and prints them after the run."""

import pytest

_outcomes: list[tuple[str, bool, str]] = []


class Criterion:
    def __init__(self, title: str):
        self.title = title
        self.details: list[str] = []

    def note(self, text: str) -> None:
        self.details.append(text)


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    return Criterion(marker.args[0] if marker else request.node.name)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    failed_setup = report.when == "setup" and report.failed
    if report.when == "call" or failed_setup:
        crit = item.funcargs.get("criterion")
        details = "; ".join(crit.details) if crit else ""
        _outcomes.append((marker.args[0], report.passed, details))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for title, passed, details in _outcomes:
        line = f"{'PASS' if passed else 'FAIL'}  {title}"
        if details:
            line += f"  [{details}]"
        terminalreporter.write_line(line)
