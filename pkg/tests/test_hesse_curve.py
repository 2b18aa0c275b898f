from fractions import Fraction

import pytest

from core.exceptions import ClassificationError, CurveError, SingularCurveError
from core.projective import ProjMap
from services.hesse_curve import HesseCurve


def test_j_invariant_anchors(curve_j0, curve_j1728, curve_five_thirds):
    assert curve_j0.j_invariant() == 0
    assert curve_j1728.j_invariant() == 1728
    j = curve_five_thirds.j_invariant()
    assert j != 0 and j != 1728


@pytest.mark.parametrize("lam", [1, Fraction(1)])
def test_singular_curve(q_w, lam):
    with pytest.raises(SingularCurveError):
        HesseCurve(q_w(lam))


def test_omega_lambda_is_singular(q_w, w):
    with pytest.raises(SingularCurveError):
        HesseCurve(w)


def test_points_must_lie_on_the_curve(curve_j0):
    with pytest.raises(CurveError):
        curve_j0.point(1, 2, 3)


@pytest.mark.parametrize("fixture", ["curve_j0", "curve_five_thirds"])
def test_group_axioms_on_chord_points(request, fixture):
    curve = request.getfixturevalue(fixture)
    points = curve.sample_points(22)
    assert len(points) >= 20
    o = curve.origin
    for p in points:
        assert p + o == p
        assert p + (-p) == o
    for p in points[:6]:
        for q in points[:6]:
            assert p + q == q + p
    for a, b, c in zip(points, points[7:], points[13:]):
        assert (a + b) + c == a + (b + c)


def test_associativity_off_the_torsion(q_w_cbrt3):
    r = q_w_cbrt3.gen("r")
    curve = HesseCurve(q_w_cbrt3.zero)
    p = curve.point(1, 2, -r * r)
    points = curve.sample_points(22, (p,))
    assert all(n * p != curve.origin for n in range(1, 10))
    for a, b in zip(points, points[5:]):
        assert (a + b) + p == a + (b + p)


def test_scalar_multiplication(curve_j0):
    c = curve_j0.tower.gen("c")
    p = curve_j0.point(1, 1, -c)
    assert 2 * p == curve_j0.origin
    assert 3 * p == p
    assert -1 * p == -p
    assert curve_j0.point_order(p) == 2


@pytest.mark.parametrize("fixture,order", [("curve_five_thirds", 2), ("curve_j0", 6), ("curve_j1728", 4)])
def test_tau_orders(request, fixture, order):
    curve = request.getfixturevalue(fixture)
    assert curve.tau_order == order
    tau = curve.tau_generator
    assert tau(curve.origin.point) == curve.origin.point
    for p in curve.flexes():
        assert curve.contains(tau(p.point))


def test_automorphism_classes(curve_j0, curve_j1728, curve_five_thirds, q_w_sqrt3):
    assert curve_j0.automorphism_class() == "j0"
    assert curve_j1728.automorphism_class() == "j1728"
    assert curve_five_thirds.automorphism_class() == "generic"
    other_root = HesseCurve(q_w_sqrt3.one - q_w_sqrt3.gen("s"))
    assert other_root.automorphism_class() == "j1728"


def test_j0_outside_the_fixed_form_is_rejected(q_w):
    # λ = -2 also has j = 0 (λ^3 + 8 = 0).
    curve = HesseCurve(q_w(-2))
    assert curve.j_invariant() == 0
    with pytest.raises(ClassificationError):
        curve.automorphism_class()


def test_torsion_sets(curve_j0, curve_five_thirds):
    for curve in (curve_j0, curve_five_thirds):
        o = curve.origin
        e2 = curve.torsion_points(2)
        e3 = curve.torsion_points(3)
        e6 = curve.torsion_points(6)
        assert (len(e2), len(e3), len(e6)) == (4, 9, 36)
        assert all(2 * p == o for p in e2.points)
        assert all(3 * p == o for p in e3.points)
        assert all(6 * p == o for p in e6.points)
        assert o in e3


def test_flexes_do_not_depend_on_lambda(curve_j0):
    assert len(set(curve_j0.flexes())) == 9
    assert all(curve_j0.contains(p.point) for p in curve_j0.flexes())


def test_translations_by_flexes_are_linear(curve_five_thirds):
    maps = curve_five_thirds.translation_group()
    assert len(maps) == 9
    assert len(set(maps)) == 9
    for q, m in zip(curve_five_thirds.flexes(), maps):
        for x in curve_five_thirds.sample_points(12):
            assert m(x.point) == (q + x).point


def test_linear_extension_is_cached_per_seed_set(curve_five_thirds):
    flex = curve_five_thirds.flexes()[4]
    seed = curve_five_thirds.point(1, 1, 2)
    aut = curve_five_thirds.aut(flex, 0)
    plain = curve_five_thirds.linear_extension(aut)
    seeded = curve_five_thirds.linear_extension(aut, (seed,))
    assert plain == seeded
    assert seeded(seed.point) == (flex + seed).point
    assert {(aut, ()), (aut, (seed,))} <= set(curve_five_thirds._extension_cache)


def test_translation_by_two_torsion_is_not_linear(curve_j0):
    c = curve_j0.tower.gen("c")
    p = curve_j0.point(1, 1, -c)
    assert curve_j0.linear_extension(curve_j0.aut(p, 0)) is None


def test_as_elliptic_aut(curve_j0):
    tau = curve_j0.tau_generator
    aut = curve_j0.as_elliptic_aut(tau)
    assert aut.power == 1
    assert aut.translate == curve_j0.origin
    stretch = ProjMap.from_rows(curve_j0.tower, [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    with pytest.raises(CurveError):
        curve_j0.as_elliptic_aut(stretch)


def test_exceptional_set(q_zeta9, curve_j0):
    z = q_zeta9.gen("z")
    curve = HesseCurve(q_zeta9.zero)
    p = curve.point(1, z, z * z)
    assert curve.in_exceptional(p)
    assert curve.point_order(p, 9) == 9
    c = curve_j0.tower.gen("c")
    assert not curve_j0.in_exceptional(curve_j0.point(1, 1, -c))


def test_exceptional_set_needs_lambda_zero(curve_five_thirds):
    with pytest.raises(CurveError):
        curve_five_thirds.in_exceptional(curve_five_thirds.origin)


def test_six_torsion_example_point(curve_five_thirds):
    w = curve_five_thirds.tower.gen("w")
    p = curve_five_thirds.point(1, 1, 2) + curve_five_thirds.point(1, -w, 0)
    assert curve_five_thirds.point_order(p) == 6
