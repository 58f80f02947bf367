from fractions import Fraction

import pytest

from arrtop.geometry import Arrangement, Hyperplane


def make_arrangement(dim, rows):
    """rows: list of (normal tuple, offset); labels are generated."""
    hyps = [Hyperplane(tuple(Fraction(x) for x in normal), Fraction(offset), f"H{i + 1}")
            for i, (normal, offset) in enumerate(rows)]
    return Arrangement.build(dim, hyps)


@pytest.fixture
def mk():
    return make_arrangement


@pytest.fixture
def a1():
    return make_arrangement(1, [((1,), 0)])


@pytest.fixture
def a2():
    return make_arrangement(1, [((1,), 0), ((1,), 1)])


@pytest.fixture
def bool2():
    return make_arrangement(2, [((1, 0), 0), ((0, 1), 0)])


@pytest.fixture
def gen3():
    return make_arrangement(2, [((1, 0), 0), ((0, 1), 0), ((1, 1), 1)])


@pytest.fixture
def cen3():
    return make_arrangement(2, [((1, 0), 0), ((0, 1), 0), ((1, -1), 0)])
