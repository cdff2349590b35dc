import pytest

from cliffzeta.corpus import build
from cliffzeta.zeta import Clifford


@pytest.fixture(scope="session")
def clifford():
    cache = {}

    def get(g, n):
        if (g, n) not in cache:
            cache[(g, n)] = Clifford(build(g, n))
        return cache[(g, n)]
    return get
