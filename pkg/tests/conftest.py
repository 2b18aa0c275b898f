from fractions import Fraction

import pytest

from core.towers import load_tower
from services.hesse_curve import HesseCurve


@pytest.fixture(scope="session")
def q():
    return load_tower("q")


@pytest.fixture(scope="session")
def q_w():
    return load_tower("q_w")


@pytest.fixture(scope="session")
def q_w_cbrt2():
    return load_tower("q_w_cbrt2")


@pytest.fixture(scope="session")
def q_w_sqrt2():
    return load_tower("q_w_sqrt2")


@pytest.fixture(scope="session")
def q_w_sqrt3():
    return load_tower("q_w_sqrt3")


@pytest.fixture(scope="session")
def q_w_cbrt3():
    return load_tower("q_w_cbrt3")


@pytest.fixture(scope="session")
def q_zeta9():
    return load_tower("q_zeta9")


@pytest.fixture(scope="session")
def w(q_w):
    return q_w.gen("w")


@pytest.fixture(scope="session")
def curve_j0(q_w_cbrt2):
    """x^3 + y^3 + z^3 = 0 over Q(ω, 2^(1/3))."""
    return HesseCurve(q_w_cbrt2.zero)


@pytest.fixture(scope="session")
def curve_five_thirds(q_w_sqrt2):
    """λ = 5/3, where c^3 - 5c + 2 = (c - 2)(c^2 + 2c - 1) splits over Q(ω, √2)."""
    return HesseCurve(q_w_sqrt2(Fraction(5, 3)))


@pytest.fixture(scope="session")
def curve_j1728(q_w_sqrt3):
    return HesseCurve(q_w_sqrt3.one + q_w_sqrt3.gen("s"))
