import pytest

from ltforge import get_context, make_tower

# context construction is cached process-wide; these fixtures just make the
# dependencies explicit and keep D/N choices in one place

D = 128
N = 64


@pytest.fixture(scope="session")
def ctx3():
    return get_context(3, "multiplicative", D, N)


@pytest.fixture(scope="session")
def ctx5():
    return get_context(5, "multiplicative", D, N)


@pytest.fixture(scope="session")
def ctx2():
    return get_context(2, "multiplicative", D, N)


@pytest.fixture(scope="session")
def ctx3_basic():
    return get_context(3, "basic", D, N)


@pytest.fixture(scope="session")
def ctx2_basic():
    return get_context(2, "basic", D, N)


@pytest.fixture(scope="session")
def L34():
    """Q_3(3^(1/4)), the worked example tower."""
    return make_tower(3, 1, 4, None, N)


@pytest.fixture(scope="session")
def L56():
    """Q_5(5^(1/6))."""
    return make_tower(5, 1, 6, None, N)


@pytest.fixture(scope="session")
def Q3():
    return make_tower(3, 1, 1, None, N)


@pytest.fixture(scope="session")
def Q5():
    return make_tower(5, 1, 1, None, N)


@pytest.fixture(scope="session")
def Q2():
    return make_tower(2, 1, 1, None, N)
