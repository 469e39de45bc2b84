import pytest

from theta.data import bundled
from theta.pipeline import pipeline


@pytest.fixture(scope="session")
def pd():
    return bundled()


@pytest.fixture(scope="session")
def p2():
    return pipeline(2)


@pytest.fixture(scope="session")
def p1():
    return pipeline(1)


@pytest.fixture(scope="session")
def measures():
    from theta.measures import bundled_measures

    return bundled_measures()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=lambda k: (int(k.split(".")[0]), k)):
        terminalreporter.write_line(RESULTS[key])
