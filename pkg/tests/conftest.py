import numpy as np
import pytest

from sympberry import LieAlgElement, Sp4Generator, exp_map


@pytest.fixture
def rng():
    return np.random.default_rng(20240814)


@pytest.fixture
def random_symmetric():
    def make(rng, n, scale=1.0):
        X = rng.uniform(-scale, scale, size=(n, n))
        return (X + X.T) / 2.0

    return make


@pytest.fixture
def random_symplectic(random_symmetric):
    # exp of a bounded symmetric generator: always a valid group element
    def make(rng, n, scale=0.6):
        return exp_map(LieAlgElement(n, random_symmetric(rng, 2 * n, scale)))

    return make


@pytest.fixture
def random_generator(random_symmetric):
    def make(rng, scale=1.0):
        return Sp4Generator(
            a=random_symmetric(rng, 2, scale),
            b=rng.uniform(-scale, scale, size=(2, 2)),
            c=random_symmetric(rng, 2, scale),
        )

    return make
