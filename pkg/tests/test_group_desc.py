import random
from fractions import Fraction

import pytest

from core.projective import Matrix3, ProjMap
from services.group_desc import (DiagPowerFamily, DiagTorus2, FiniteGroup,
                                 FullPGL3, Semidirect, Trivial, TypeTFamily,
                                 UnipotentFamily, diag_torus1, finite_cyclic)


def _diag(tower, a, b, c):
    return ProjMap.of(Matrix3.diag(tower, a, b, c))


@pytest.fixture(scope="module")
def swap_xy(q_w):
    return ProjMap.from_rows(q_w, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])


@pytest.fixture(scope="module")
def cycle(q_w):
    return ProjMap.from_rows(q_w, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])


def test_diagonal_families(q_w, swap_xy):
    assert DiagTorus2().contains(_diag(q_w, 1, 2, 3))
    assert not DiagTorus2().contains(swap_xy)
    assert diag_torus1().contains(_diag(q_w, 2, 4, 1))
    assert not diag_torus1().contains(_diag(q_w, 1, 2, 2))
    third_axis = DiagPowerFamily(0, 1)
    assert third_axis.contains(_diag(q_w, 1, 1, 5))
    assert not third_axis.contains(_diag(q_w, 1, 2, 1))
    assert DiagPowerFamily(1, 2).contains(_diag(q_w, 1, 3, 9))
    assert DiagPowerFamily(1, -2).contains(_diag(q_w, 1, 2, Fraction(1, 4)))
    assert not DiagPowerFamily(1, -2).contains(_diag(q_w, 1, 2, 4))


def test_exponent_must_be_zero_or_one():
    with pytest.raises(ValueError):
        DiagPowerFamily(2, 1)


def test_type_t_family(q_w, w):
    assert TypeTFamily().contains(ProjMap.from_rows(q_w, [[1, 0, 0], [0, w, 0], [3, -1, w * w]]))
    assert TypeTFamily().contains(ProjMap.from_rows(q_w, [[1, 0, 0], [0, 1, 0], [2, 0, 1]]))
    assert not TypeTFamily().contains(_diag(q_w, 1, 2, 4))


def test_unipotent_family(q_w):
    assert UnipotentFamily().contains(ProjMap.from_rows(q_w, [[1, 0, 0], [3, 1, 0], [9, 6, 1]]))
    assert not UnipotentFamily().contains(ProjMap.from_rows(q_w, [[1, 0, 0], [3, 1, 0], [9, 5, 1]]))


@pytest.mark.parametrize("family", [FullPGL3(), DiagTorus2(), diag_torus1(), DiagPowerFamily(0, 1),
                                    DiagPowerFamily(1, 2), DiagPowerFamily(1, -2), TypeTFamily(),
                                    UnipotentFamily()], ids=lambda g: g.label)
def test_samples_lie_in_their_family(q_w, family):
    rng = random.Random(11)
    for _ in range(10):
        assert family.contains(family.sample(q_w, rng))
    assert not family.is_finite()


def test_trivial_group(q_w, swap_xy):
    trivial = Trivial(q_w)
    assert trivial.contains(ProjMap.identity(q_w))
    assert not trivial.contains(swap_xy)
    assert trivial.sample(q_w, random.Random(0)).is_identity()
    assert trivial.is_finite()


def test_finite_cyclic_groups(q_w, w, cycle):
    rotation = finite_cyclic(_diag(q_w, 1, w, w * w), "<diag(1,w,w^2)>")
    assert rotation.order() == 3
    assert rotation.contains(_diag(q_w, 1, w * w, w))
    assert not rotation.contains(_diag(q_w, 1, w, w))
    assert finite_cyclic(cycle, "<(x y z)>").order() == 3


def test_group_equality_ignores_labels_and_generators(q_w, w):
    g = _diag(q_w, 1, w, w * w)
    assert finite_cyclic(g, "a") == finite_cyclic(g.inverse(), "b")
    assert finite_cyclic(g, "a") != finite_cyclic(_diag(q_w, 1, -1, 1), "a")
    assert DiagPowerFamily(1, 2, label="x") == DiagPowerFamily(1, 2, label="y")


def test_infinite_generator_is_rejected(q):
    with pytest.raises(ValueError):
        finite_cyclic(_diag(q, 1, 2, 1), "<diag(1,2,1)>").elements()
    with pytest.raises(ValueError):
        FiniteGroup([], "empty")


def test_semidirect_membership(q_w, w, swap_xy, cycle):
    s_group = Semidirect(DiagTorus2(), finite_cyclic(cycle, "<(x y z)>"))
    assert s_group.contains(cycle @ _diag(q_w, 1, 2, 3))
    assert s_group.contains(cycle.inverse())
    assert not s_group.contains(swap_xy)
    assert not s_group.is_finite()

    nc = Semidirect(finite_cyclic(_diag(q_w, 1, w, w * w), "<diag(1,w,w^2)>"), finite_cyclic(swap_xy, "<(x y)>"))
    assert nc.is_finite()
    assert len(nc.elements()) == 6
    assert nc.contains(swap_xy @ _diag(q_w, 1, w, w * w))
    assert nc == FiniteGroup([swap_xy, _diag(q_w, 1, w, w * w)], "S3")


def test_semidirect_with_trivial_factor(q_w):
    group = Semidirect(diag_torus1(), Trivial(q_w))
    assert group.contains(_diag(q_w, 1, 3, Fraction(1, 3)))
    assert group.contains(group.sample(q_w, random.Random(5)))
