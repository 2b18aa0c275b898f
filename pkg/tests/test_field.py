from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.exceptions import FieldError, TowerTooSmallError
from core.field import FieldElement, FieldTower, root_of_unity_order
from core.towers import load_tower
from services.hesse_curve import HesseCurve

TOWER = load_tower("q_w_sqrt2")

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)
elements = st.lists(small_fractions, min_size=TOWER.dim, max_size=TOWER.dim).map(
    lambda cs: FieldElement(TOWER, tuple(Fraction(c) for c in cs)))


def test_cube_root_of_unity(q_w, w):
    assert w * w + w + 1 == 0
    assert w ** 3 == 1
    assert q_w.primitive_cube_root() ** 3 == 1
    assert q_w.primitive_cube_root() != 1


def test_generators_satisfy_their_minimal_polynomials(q_w_cbrt2, q_w_sqrt3, q_zeta9):
    assert q_w_cbrt2.gen("c") ** 3 == 2
    assert q_w_sqrt3.gen("s") ** 2 == 3
    z = q_zeta9.gen("z")
    assert z ** 9 == 1 and z ** 3 != 1


def test_inverse_and_division():
    t = TOWER.gen("t")
    w = TOWER.gen("w")
    a = 1 + t + w
    assert a * a.inverse() == 1
    assert (a / a) == 1
    assert 1 / t == t / 2


def test_division_by_zero_raises():
    with pytest.raises(FieldError):
        TOWER.zero.inverse()


def test_tower_mismatch_raises(q_w, q_w_sqrt3):
    with pytest.raises(FieldError):
        q_w.gen("w") + q_w_sqrt3.gen("s")


def test_lower_levels_embed(q_w, q_w_cbrt2):
    w_low = q_w.gen("w")
    assert q_w_cbrt2(w_low) == q_w_cbrt2.gen("w")


def test_extend_rejects_non_monic_and_duplicate_names():
    base = FieldTower.rationals().extend("i", [1, 0, 1])
    with pytest.raises(FieldError):
        base.extend("j", [1, 0, 2])
    with pytest.raises(FieldError):
        base.extend("i", [-2, 0, 1])
    assert base.gen("i") ** 2 == -1


def test_root_of_unity_order(q_w, w, q_zeta9):
    assert root_of_unity_order(q_w.one, 12) == 1
    assert root_of_unity_order(q_w(-1), 12) == 2
    assert root_of_unity_order(w, 12) == 3
    assert root_of_unity_order(-w, 12) == 6
    assert root_of_unity_order(q_zeta9.gen("z"), 12) == 9
    assert root_of_unity_order(q_w(2), 12) is None
    with pytest.raises(FieldError):
        root_of_unity_order(q_w.zero, 12)


def test_find_roots_recognizes_all_roots_in_the_tower():
    t = TOWER.gen("t")
    roots, residual = TOWER.find_roots([2, -5, 0, 1])
    assert set(roots) == {TOWER(2), t - 1, -t - 1}
    assert len(residual) == 1


def test_find_roots_reports_the_residual(q_w):
    roots, residual = q_w.find_roots([2, -5, 0, 1])
    assert roots == [q_w(2)]
    assert residual == [q_w(-1), q_w(2), q_w(1)]


def test_two_torsion_needs_sqrt2_over_q_w(q_w):
    curve = HesseCurve(q_w(Fraction(5, 3)))
    with pytest.raises(TowerTooSmallError) as info:
        curve.torsion_points(2)
    assert info.value.missing_polynomial is not None
    assert info.value.to_payload()["error"] == "tower_too_small"


def test_json_round_trip_of_elements(q_w_cbrt2):
    c = q_w_cbrt2.gen("c")
    w = q_w_cbrt2.gen("w")
    x = Fraction(3, 2) * c * c - w * c + 7
    assert q_w_cbrt2.element_from_json(x.to_json()) == x


def test_str_uses_generator_names(q_w):
    assert str(q_w.gen("w")) == "w"
    assert str(-q_w.gen("w") - 1) == "-1 - w"


@settings(max_examples=40, deadline=None)
@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@settings(max_examples=40, deadline=None)
@given(elements)
def test_nonzero_elements_are_invertible(a):
    if a:
        assert a * a.inverse() == 1
