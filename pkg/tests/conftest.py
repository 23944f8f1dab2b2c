import pytest

from splitmat import fixtures
from splitmat.census import enumerate_matroids
from splitmat.matroid import uniform


@pytest.fixture
def snowflake():
    return fixtures.snowflake()


@pytest.fixture
def m5():
    return fixtures.m5()


@pytest.fixture
def nonsplit36():
    return fixtures.example_nonsplit_36()


@pytest.fixture
def fano():
    return fixtures.fano()


@pytest.fixture
def u12():
    return uniform(1, 2)


@pytest.fixture
def u24():
    return uniform(2, 4)


@pytest.fixture(scope="session")
def corpora():
    """Enumerated isomorphism classes, shared by the slow sweeps."""
    return {
        shape: list(enumerate_matroids(*shape))
        for shape in [(2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (4, 6)]
    }
