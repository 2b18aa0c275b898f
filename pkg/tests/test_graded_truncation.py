import random

import pytest

from core.exceptions import RelationError
from core.projective import Matrix3
from services.catalog import AlgebraTypeTag, algebra_catalog
from services.graded_truncation import (GradedTruncation,
                                        algebraic_twisting_system, scale_map,
                                        truncation_dims,
                                        verify_twisting_system, word_string)
from services.quadratic_algebra import twist_relations


@pytest.mark.parametrize("tag", list(AlgebraTypeTag), ids=lambda t: t.value)
def test_hilbert_series_of_every_catalog_row(tag):
    relations, _ = algebra_catalog.standard_algebra(algebra_catalog.default_type(tag))
    assert truncation_dims(relations, 4) == [1, 3, 6, 10, 15]


@pytest.mark.parametrize("tag", list(AlgebraTypeTag), ids=lambda t: t.value)
def test_hilbert_series_is_unchanged_by_twisting(tag):
    t = algebra_catalog.default_type(tag)
    relations, _ = algebra_catalog.standard_algebra(t)
    z_e, _ = algebra_catalog.table2_groups(t)
    tau = z_e.sample(t.tower, random.Random(3))
    assert truncation_dims(twist_relations(relations, tau.transpose().matrix), 4) == [1, 3, 6, 10, 15]


def test_free_algebra_when_there_are_no_extra_relations(q_w):
    relations, _ = algebra_catalog.standard_algebra(algebra_catalog.default_type(AlgebraTypeTag.P))
    truncation = GradedTruncation(relations, 2)
    assert truncation.normal_words(1) == ["x", "y", "z"]
    assert len(truncation.normal_words(2)) == 6
    assert word_string(0, 0) == "1"


def test_truncation_degree_is_capped():
    relations, _ = algebra_catalog.standard_algebra(algebra_catalog.default_type(AlgebraTypeTag.P))
    with pytest.raises(RelationError):
        GradedTruncation(relations, 99)


def test_commutative_products(q_w):
    relations, _ = algebra_catalog.standard_algebra(algebra_catalog.default_type(AlgebraTypeTag.P))
    truncation = GradedTruncation(relations, 2)
    x = [q_w.one, q_w.zero, q_w.zero]
    y = [q_w.zero, q_w.one, q_w.zero]
    assert truncation.multiply(1, x, 1, y) == truncation.multiply(1, y, 1, x)
    with pytest.raises(RelationError):
        truncation.multiply(2, truncation.multiply(1, x, 1, y), 1, x)


@pytest.fixture(scope="module")
def polynomial_ring_system(q_w):
    relations, _ = algebra_catalog.standard_algebra(algebra_catalog.default_type(AlgebraTypeTag.P))
    truncation = GradedTruncation(relations, 4)
    system = algebraic_twisting_system(truncation, Matrix3.diag(q_w, 1, 2, 3), 3)
    return truncation, system


def test_powers_of_an_automorphism_form_a_twisting_system(polynomial_ring_system):
    truncation, system = polynomial_ring_system
    check = verify_twisting_system(truncation, system, require_normalized=True)
    assert check.passed
    assert check.witness is None
    assert check.checked > 0


def test_perturbed_theta_fails_with_a_witness(polynomial_ring_system):
    truncation, system = polynomial_ring_system
    check = verify_twisting_system(truncation, scale_map(system, 1, 1, 2))
    assert not check.passed
    assert set(check.witness) == {"n", "m", "a", "b"}


def test_theta_zero_must_be_the_identity(polynomial_ring_system):
    truncation, system = polynomial_ring_system
    check = verify_twisting_system(truncation, scale_map(system, 0, 1, 2), require_normalized=True)
    assert not check.passed
    assert check.witness["reason"] == "theta_0 is not the identity"
