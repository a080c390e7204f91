import pytest

from helpers import F1, F2, F3, F4


@pytest.fixture
def f1():
    return F1


@pytest.fixture
def f2():
    return F2


@pytest.fixture
def f3():
    return F3


@pytest.fixture
def f4():
    return F4


@pytest.fixture
def reference_polys():
    return [F1, F2, F3, F4]
