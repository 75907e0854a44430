import random

import pytest

from tmotive import Field, carlitz, dual, from_matrix, parse_bivar


@pytest.fixture(scope="session")
def F2():
    return Field(2)


@pytest.fixture(scope="session")
def F3():
    return Field(3)


@pytest.fixture(scope="session")
def F4():
    return Field(2, 2, [1, 1, 1])


@pytest.fixture(scope="session")
def example_motive(F2):
    return from_matrix(
        [
            [parse_bivar(F2, "th+1"), parse_bivar(F2, "t*th+th")],
            [parse_bivar(F2, "t+1"), parse_bivar(F2, "t^2+th")],
        ],
        name="example",
    )


@pytest.fixture(scope="session")
def scaled_carlitz(F3):
    return from_matrix([[parse_bivar(F3, "th^2*(t-th)")]], name="scaled carlitz")


@pytest.fixture()
def rng():
    return random.Random(20240517)


def random_poly(ring, rng, maxdeg, nonzero=False):
    from tmotive import ExtField, Poly

    while True:
        n = rng.randrange(maxdeg + 1)
        if isinstance(ring, ExtField):
            cs = [
                tuple(rng.randrange(ring.base.q) for _ in range(ring.d))
                for _ in range(n + 1)
            ]
        else:
            cs = [rng.randrange(ring.q) for _ in range(n + 1)]
        f = Poly(ring, cs)
        if not (nonzero and f.is_zero()):
            return f


def random_bivar(ff, rng, dt, dth, nonzero=False):
    from tmotive import BivarPoly

    while True:
        b = BivarPoly(
            ff,
            [
                [rng.randrange(ff.q) for _ in range(dt + 1)]
                for _ in range(dth + 1)
            ],
        )
        if not (nonzero and b.is_zero()):
            return b
