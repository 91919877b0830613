import pytest

from tlaurent.algebra import field


@pytest.fixture(scope="session")
def F2():
    return field(2)


@pytest.fixture(scope="session")
def F3():
    return field(3)


@pytest.fixture(scope="session")
def F4():
    return field(2, 2)
