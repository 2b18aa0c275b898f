import random

import pytest

from core.exceptions import RelationError
from core.polynomial import Polynomial
from core.projective import Matrix3, ProjPoint
from services.catalog import AlgebraTypeTag, algebra_catalog
from services.quadratic_algebra import (RelationSpace, generic_sigma,
                                        geometric_twist_check,
                                        pencil_determinant, reconstruct_G2,
                                        sigma_from_pencil,
                                        sigma_inverse_from_pencil,
                                        twist_point_map, twist_relations,
                                        verify_G1)

ALL_TAGS = list(AlgebraTypeTag)


def default(tag):
    return algebra_catalog.standard_algebra(algebra_catalog.default_type(tag))


@pytest.mark.parametrize("tag", ALL_TAGS, ids=lambda t: t.value)
def test_catalog_rows_satisfy_G1(tag):
    relations, pair = default(tag)
    certificate = verify_G1(relations, pair)
    assert certificate.passed, [c.detail for c in certificate.checks if not c.passed]


@pytest.mark.parametrize("tag", ALL_TAGS, ids=lambda t: t.value)
def test_catalog_rows_are_reconstructed_by_G2(tag):
    relations, pair = default(tag)
    assert reconstruct_G2(pair).same_subspace(relations)


def test_pencil_determinant_of_P_is_zero():
    relations, pair = default(AlgebraTypeTag.P)
    assert pencil_determinant(relations).is_zero()
    assert pair.is_whole_plane


def test_pencil_determinant_of_S_is_a_multiple_of_xyz(q_w):
    t = algebra_catalog.make_type("S", {"alpha": "2"})
    relations, _ = algebra_catalog.standard_algebra(t)
    x, y, z = Polynomial.variables(q_w, 3)
    assert pencil_determinant(relations).proportional_to(x * y * z)


def test_pencil_determinant_of_EC_is_the_hesse_cubic():
    t = algebra_catalog.default_type(AlgebraTypeTag.EC)
    relations, _ = algebra_catalog.standard_algebra(t)
    assert pencil_determinant(relations).proportional_to(t.curve.form)
    assert t.lam == 0


def test_printed_t_prime_relations_have_the_exchanged_point_variety(q_w):
    printed = algebra_catalog.printed_t_prime_relations(q_w)
    x, y, z = Polynomial.variables(q_w, 3)
    assert pencil_determinant(printed).proportional_to(y * (x * x - y * z))
    relations, _ = default(AlgebraTypeTag.T_PRIME)
    assert pencil_determinant(relations).proportional_to(x * (y * y - x * z))


def test_sigma_of_the_polynomial_ring_is_the_identity(q_w):
    relations, _ = default(AlgebraTypeTag.P)
    p = ProjPoint.of(q_w, 1, 2, 3)
    assert sigma_from_pencil(relations, p) == p
    assert sigma_inverse_from_pencil(relations, p) == p


def test_sigma_on_the_lines_of_S(q_w):
    t = algebra_catalog.make_type("S", {"alpha": "2"})
    relations, pair = algebra_catalog.standard_algebra(t)
    p = ProjPoint.of(q_w, 0, 1, 1)
    assert sigma_from_pencil(relations, p) == ProjPoint.of(q_w, 0, 1, 2)
    assert pair.sigma(p) == ProjPoint.of(q_w, 0, 1, 2)
    assert sigma_inverse_from_pencil(relations, ProjPoint.of(q_w, 0, 1, 2)) == p


def test_sigma_off_the_point_variety_raises(q_w):
    relations, _ = default(AlgebraTypeTag.S)
    with pytest.raises(RelationError):
        sigma_from_pencil(relations, ProjPoint.of(q_w, 1, 1, 1))


def test_generic_sigma_matches_the_elliptic_translation():
    relations, pair = default(AlgebraTypeTag.EC)
    formula = generic_sigma(relations)
    assert formula is not None
    component = pair.elliptic_component
    for p in component.sample_points(12):
        values = [f.evaluate(p.coords) for f in formula]
        if any(values):
            assert ProjPoint.from_vector(values) == pair.sigma(p)


def test_relation_space_validation(q_w):
    with pytest.raises(RelationError):
        RelationSpace.from_words(q_w, [{"xy": 1}, {"xy": 2}, {"yz": 1}])
    with pytest.raises(RelationError):
        RelationSpace.from_words(q_w, [{"xw": 1}, {"xy": 1}, {"yz": 1}])
    with pytest.raises(RelationError):
        RelationSpace.from_words(q_w, [{"xy": 1}, {"yz": 1}])


def test_twisting_by_a_singular_map_raises(q_w):
    relations, _ = default(AlgebraTypeTag.P)
    with pytest.raises(RelationError):
        twist_relations(relations, Matrix3.diag(q_w, 1, 1, 0))


def test_twisting_the_polynomial_ring_gives_a_skew_polynomial_ring(q_w):
    relations, pair = default(AlgebraTypeTag.P)
    phi = Matrix3.diag(q_w, 1, 1, 2)
    twisted = twist_relations(relations, phi)
    expected = RelationSpace.from_words(q_w, [{"yz": 1, "zy": -2}, {"zx": 2, "xz": -1}, {"xy": 1, "yx": -1}])
    assert twisted.same_subspace(expected)
    assert geometric_twist_check(relations, phi, pair)
    assert twist_point_map(phi).matrix == Matrix3.diag(q_w, 1, 1, 2)


@pytest.mark.parametrize("tag", ALL_TAGS, ids=lambda t: t.value)
def test_algebraic_and_geometric_twists_agree(tag):
    t = algebra_catalog.default_type(tag)
    relations, pair = algebra_catalog.standard_algebra(t)
    z_e, _ = algebra_catalog.table2_groups(t)
    rng = random.Random(7)
    for _ in range(5):
        tau = z_e.sample(t.tower, rng)
        # φ is paired with the point map τ = φ^t.
        assert geometric_twist_check(relations, tau.transpose().matrix, pair), tau.pretty()
