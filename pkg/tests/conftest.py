import functools

import pytest

from sheetplasmon import amplitude, dispersion, oracle

_LINES = []


@pytest.fixture
def report():
    """Record one acceptance line; all lines are printed in the terminal summary."""
    def add(tag, result):
        line = f"criterion {tag:>2}: {result.line()}"
        _LINES.append(line)
        print(line)
    return add


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _LINES:
        terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def series_root(qt, c0):
    return dispersion.find_root(qt, c0)


@functools.lru_cache(maxsize=None)
def series_profile(qt, c0):
    return amplitude.build_profile(series_root(qt, c0), c0)


@functools.lru_cache(maxsize=None)
def oracle_root(qt, c0):
    return oracle.oracle_root(qt, c0)


@pytest.fixture(scope="session")
def root_005():
    return series_root(0.05, 1e-3)


@pytest.fixture(scope="session")
def profile_005():
    return series_profile(0.05, 1e-3)
