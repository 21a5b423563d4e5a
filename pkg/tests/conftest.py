import numpy as np
import pytest

from nctorus import HermiteBasis, rieffel_projection


@pytest.fixture(scope="session")
def p03():
    return rieffel_projection(0.3)


@pytest.fixture(scope="session")
def basis200():
    return HermiteBasis(200)


@pytest.fixture(scope="session")
def basis400():
    return HermiteBasis(400)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
