import math

import pytest

from banachgeo.spaces import Lp, Polyhedral, XMu

HEX_VERTICES = [
    [math.cos(k * math.pi / 3.0), math.sin(k * math.pi / 3.0)] for k in range(6)
]


@pytest.fixture(scope="session")
def l2():
    return Lp(2.0)


@pytest.fixture(scope="session")
def l1():
    return Lp(1.0)


@pytest.fixture(scope="session")
def linf():
    return Lp(math.inf)


@pytest.fixture(scope="session")
def xmu12():
    return XMu(1.2)


@pytest.fixture(scope="session")
def hexagon():
    return Polyhedral(HEX_VERTICES)
