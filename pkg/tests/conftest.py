import math

import pytest

from outer_billiards import _backend
from outer_billiards.curve import CurveParams
from outer_billiards.gutkin import solve_gutkin

# Roots of tan(nx) = n tan(x) for n = 7, rounded to 6 decimals.
X1_REF = 0.646471
X2_REF = 1.111932


@pytest.fixture(scope="session")
def p7():
    return CurveParams(7, 0.01)


@pytest.fixture(scope="session")
def circle():
    return CurveParams(7, 0.0)


@pytest.fixture(scope="session")
def roots7():
    return solve_gutkin(7)


@pytest.fixture(params=_backend.available())
def backend(request):
    before = _backend.name
    _backend.use(request.param)
    yield request.param
    _backend.use(before)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


_OUTCOMES = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    num = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        prev = _OUTCOMES.get(num, True)
        _OUTCOMES[num] = prev and rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_OUTCOMES):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if _OUTCOMES[num] else 'FAIL'}")


def wrap_gap(a, b):
    d = (a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)
