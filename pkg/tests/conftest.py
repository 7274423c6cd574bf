import pytest

from covmod import make_cyclic, make_subgroup, quotient, symmetric_3


@pytest.fixture(scope="session")
def z4():
    return make_cyclic(4)


@pytest.fixture(scope="session")
def z4_evens(z4):
    return make_subgroup(z4, (0, 2))


@pytest.fixture(scope="session")
def z4_quot(z4, z4_evens):
    return quotient(z4, z4_evens)


@pytest.fixture(scope="session")
def s3():
    return symmetric_3()


@pytest.fixture(scope="session")
def a3(s3):
    return make_subgroup(s3, (0, 3, 4))
