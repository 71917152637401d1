import pytest

import lposat
from lposat.trs import parse_trs


@pytest.fixture(scope="session")
def negation():
    with open(lposat.example_path("negation.trs")) as fh:
        return parse_trs(fh.read())


@pytest.fixture(scope="session")
def idiv():
    with open(lposat.example_path("idiv.trs")) as fh:
        return parse_trs(fh.read())


_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title = mark.args
    if rep.when == "call" or rep.failed:
        _ACCEPTANCE[number] = (title, "PASS" if rep.passed else "FAIL", rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status, seconds = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{status} criterion {number:>2}: {title} ({seconds:.2f}s)")
