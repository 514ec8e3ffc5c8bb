import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import bits_of, table_of  # noqa: E402
from readonce.boolfn import TruthTable  # noqa: E402
from readonce.verify import enumerate_readonce, load_or_build_catalog  # noqa: E402


def mux(x, u0, u1):
    return (not x and u0) or (x and u1)


def _tt(n, fn):
    return TruthTable(n, bits_of(table_of(n, fn)))


@pytest.fixture(scope="session")
def d():
    return _tt(3, mux)


@pytest.fixture(scope="session")
def or2():
    return _tt(2, lambda a, b: a or b)


@pytest.fixture(scope="session")
def or3():
    return _tt(3, lambda a, b, c: a or b or c)


@pytest.fixture(scope="session")
def f1():
    # variable order (x, y, u0, u1)
    return _tt(4, lambda x, y, u0, u1: (not x and mux(y, u0, u1)) or (x and (y or u0 or u1)))


@pytest.fixture(scope="session")
def f2():
    return _tt(4, lambda x, y, u0, u1: (not x and mux(y, u0, u1)) or (x and (u0 or u1)))


_catalogs = {}


@pytest.fixture(scope="session")
def catalog(tmp_path_factory):
    cache = tmp_path_factory.mktemp("catalogs")

    def get(n, l, include_constants=True):
        key = (n, l, include_constants)
        if key not in _catalogs:
            if n >= 4:
                path = str(cache / f"cat_{n}_{l}_{int(include_constants)}.txt")
                _catalogs[key] = load_or_build_catalog(path, n, l, include_constants)
            else:
                _catalogs[key] = enumerate_readonce(n, l, include_constants)
        return _catalogs[key]

    return get


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
