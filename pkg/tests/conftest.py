from __future__ import annotations

import pytest

from groupoid_music.instance import load_instance

_ACCEPTANCE: dict[str, str] = {}


@pytest.fixture(scope="session")
def mab():
    return load_instance("MAlphaBeta")


@pytest.fixture(scope="session")
def mm():
    return load_instance("Mm")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = f"criterion {marker.args[0]:>2}: {marker.args[1]}"
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        # a criterion split over several tests passes only if all of them do
        if _ACCEPTANCE.get(label) != "FAIL":
            _ACCEPTANCE[label] = "PASS" if rep.passed else "FAIL"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(f"{_ACCEPTANCE[label]}  {label}")
