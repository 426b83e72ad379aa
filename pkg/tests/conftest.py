import pytest

from rovib.constants import lookup


@pytest.fixture(scope="session")
def h2():
    return lookup("H2")


@pytest.fixture(scope="session")
def ar2():
    return lookup("Ar2")
