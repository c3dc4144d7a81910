import itertools
from fractions import Fraction as Fr

import pytest

from stratcomb.rootdata import GroupSpec, build_root_datum


def make(family, rank, sigma=None):
    return build_root_datum(GroupSpec(family, rank, sigma))


def dominant_vectors(datum, values):
    from stratcomb.rootdata import is_dominant

    for v in itertools.product(values, repeat=datum.ambient_dim):
        if datum.in_lattice(v) and is_dominant(datum, v):
            yield tuple(v)


def fr(*xs):
    return tuple(Fr(x) for x in xs)


@pytest.fixture
def gl2():
    return make("GL", 2)


@pytest.fixture
def gl3():
    return make("GL", 3)


CRITERIA_LINES = []


def record_criterion(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    CRITERIA_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
