from fractions import Fraction

import pytest

from qgl21.qnum import Params

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by the test")
    config.stash[_RESULTS] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    number, text = marker.args
    store = item.config.stash[_RESULTS]
    ok, _ = store.get(number, (True, text))
    store[number] = (ok and rep.passed, text)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash[_RESULTS]
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(store):
        ok, text = store[number]
        terminalreporter.write_line(f"criterion {number} [PRIMARY] {'PASS' if ok else 'FAIL'}: {text}")


@pytest.fixture
def p23():
    return Params(2, 3)


@pytest.fixture
def pq_generic():
    return Params(Fraction(13, 10), Fraction(4, 5))
