import random

import pytest

from core.exceptions import ClassificationError
from core.projective import Matrix3, ProjMap
from services.acceptance_suites import ec_examples
from services.catalog import algebra_catalog
from services.group_desc import Semidirect, Trivial, finite_cyclic
from services.quadratic_algebra import GeometricPair
from services.twist_classifier import Membership, twist_classifier


def _setup(tag, params=None):
    t = algebra_catalog.make_type(tag, params)
    _, pair = algebra_catalog.standard_algebra(t)
    z_e, g_e = algebra_catalog.table2_groups(t)
    return t, pair, z_e, g_e


def _swap_xy(tower):
    return ProjMap.from_rows(tower, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])


@pytest.fixture(scope="module")
def examples():
    return ec_examples()


def test_whole_plane():
    t, _, z_e, _ = _setup("P")
    report = twist_classifier.classify(t)
    assert report.branch == "whole plane"
    assert report.sigma_order == 1
    assert report.z_group == report.m_group == z_e
    assert report.certificate.passed


@pytest.mark.parametrize("tag", ["S", "S'"])
@pytest.mark.parametrize("alpha,branch,z_is_aut,m_is_aut", [
    ("2", "sigma^6 != id", False, False),
    ("-w", "sigma^6 = id", False, True),
    ("-1", "sigma^2 = id", True, True),
])
def test_alpha_branches(tag, alpha, branch, z_is_aut, m_is_aut):
    t, _, z_e, g_e = _setup(tag, {"alpha": alpha})
    report = twist_classifier.classify(t)
    aut = Semidirect(z_e, g_e)
    assert report.branch == branch
    assert report.z_group == (aut if z_is_aut else z_e)
    assert report.m_group == (aut if m_is_aut else z_e)
    assert report.n_group == report.m_group
    assert report.flags["twist_alg_equals_twist"] == (z_is_aut == m_is_aut)
    assert report.certificate.passed


@pytest.mark.parametrize("tag", ["T", "T'", "CC"])
def test_rigid_types(tag):
    t, pair, z_e, g_e = _setup(tag)
    report = twist_classifier.classify(t)
    assert report.branch == "G(E) meets N(E,σ) trivially"
    assert report.z_group == report.m_group == z_e
    assert report.certificate.passed
    rng = random.Random(4)
    tau = g_e.sample(t.tower, rng)
    while tau.is_identity():
        tau = g_e.sample(t.tower, rng)
    assert not twist_classifier.in_N(tau, pair)


def test_cusp_has_trivial_twist_group():
    t, _, _, _ = _setup("CC")
    report = twist_classifier.classify(t)
    assert isinstance(report.z_group, Trivial)
    members = twist_classifier.twist_family(t)
    assert [m.label for m in members] == ["identity"]


def test_z_and_n_memberships(q_w):
    t, pair, _, _ = _setup("S", {"alpha": "2"})
    assert twist_classifier.in_Z(ProjMap.of(Matrix3.diag(q_w, 1, 2, 3)), pair)
    assert not twist_classifier.in_Z(_swap_xy(q_w), pair)
    assert not twist_classifier.in_N(_swap_xy(q_w), pair)
    _, pair_w, _, _ = _setup("S", {"alpha": "-w"})
    assert twist_classifier.in_N(_swap_xy(q_w), pair_w)


def test_m_membership_from_closed_forms(q_w):
    _, pair_w, _, _ = _setup("S", {"alpha": "-w"})
    _, pair_2, _, _ = _setup("S", {"alpha": "2"})
    assert twist_classifier.in_M(_swap_xy(q_w), pair_w).membership == Membership.TRUE
    assert not twist_classifier.in_M(_swap_xy(q_w), pair_2)
    shear = ProjMap.from_rows(q_w, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert twist_classifier.in_M(shear, pair_2).membership == Membership.FALSE


def test_m_membership_by_bounded_search(q_w):
    _, pair, _, _ = _setup("S", {"alpha": "2"})
    bare = GeometricPair(pair.components, None, "S")
    inside = twist_classifier.in_M(ProjMap.of(Matrix3.diag(q_w, 1, 2, 3)), bare, bound=2)
    assert inside.membership == Membership.TRUE_WITHIN_BOUND
    outside = twist_classifier.in_M(_swap_xy(q_w), bare, bound=2)
    assert outside.membership == Membership.FALSE
    assert outside.failing_index is not None


def test_z_lies_in_m():
    t, pair, _, _ = _setup("S", {"alpha": "-w"})
    report = twist_classifier.classify(t)
    rng = random.Random(9)
    for _ in range(5):
        tau = report.z_group.sample(t.tower, rng)
        assert report.m_group.contains(tau)
        assert twist_classifier.in_N(tau, pair)


def test_sigma_powers_and_extensions(q_w):
    _, plane, _, _ = _setup("P")
    assert twist_classifier.extends_to_P2(twist_classifier.sigma_power(plane, 1)).is_identity()
    _, lines, _, _ = _setup("S", {"alpha": "2"})
    assert twist_classifier.extends_to_P2(twist_classifier.sigma_power(lines, 0)).is_identity()
    assert twist_classifier.extends_to_P2(twist_classifier.sigma_power(lines, 1)) is None


def test_twist_family_of_type_s():
    t, pair, _, _ = _setup("S", {"alpha": "2"})
    members = twist_classifier.twist_family(t)
    assert [m.label for m in members] == ["generator", "family sample", "family sample", "family sample"]
    assert all(m.pair.algebra_type is None for m in members)


@pytest.mark.slow
@pytest.mark.parametrize("name,z_power,m_power", [
    ("two_torsion", 3, 3),
    ("non_torsion", None, None),
    ("exceptional", None, 2),
    ("six_torsion", None, 1),
    ("j1728_half_period", 1, 1),
    ("j1728_shifted", None, 1),
])
def test_elliptic_branches(examples, name, z_power, m_power):
    t = examples[name]
    report = twist_classifier.classify(t)
    z_e, _ = algebra_catalog.table2_groups(t)

    def expected(k):
        return z_e if k is None else Semidirect(z_e, finite_cyclic(t.curve.tau_power(k), "τ"))

    assert report.z_group == expected(z_power)
    assert report.m_group == expected(m_power)
    assert report.certificate.passed
    assert report.flags["exceptional"] == (name == "exceptional")
    if name == "exceptional":
        assert report.flags["twist_alg_equals_twist"] is None


@pytest.mark.slow
@pytest.mark.parametrize("name", ["six_torsion", "j1728_shifted"])
def test_six_torsion_corollary(examples, name):
    report = twist_classifier.classify(examples[name])
    assert report.sigma_order == 6
    corollary = report.corollary
    assert corollary["sigma3_squared_is_id"]
    assert corollary["witness"] is not None
    assert corollary["witness_in_Z_sigma_3p"]
    assert not corollary["witness_in_Z_sigma_p"]


@pytest.mark.slow
def test_torsion_oracle_agrees_with_definitions(examples):
    _, pair = algebra_catalog.standard_algebra(examples["two_torsion"])
    rows = twist_classifier.brute_force_MN_oracle(pair)
    assert len(rows) == 54
    assert all(r.agrees for r in rows)


@pytest.mark.slow
def test_square_lattice_branches(examples):
    half = examples["j1728_half_period"]
    shifted = examples["j1728_shifted"]
    curve = shifted.curve
    assert curve.automorphism_class() == "j1728"
    assert curve.point(shifted.point) in twist_classifier.f_set(curve)
    assert 2 * curve.point(shifted.point) != curve.origin
    assert twist_classifier.classify(half).branch == "j = 1728, p = (1,1,λ)"
    report = twist_classifier.classify(shifted)
    assert report.branch == "j = 1728, p in F"
    assert not report.flags["z_equals_m"]


@pytest.mark.slow
def test_torsion_oracle_on_square_lattice(examples):
    _, pair = algebra_catalog.standard_algebra(examples["j1728_shifted"])
    rows = twist_classifier.brute_force_MN_oracle(pair)
    assert len(rows) == 9 * 4
    assert all(r.agrees for r in rows)
    assert any(r.n_definitional and not r.z_definitional for r in rows)


def test_normalizer_is_reported_as_m_and_checked():
    t, _, _, _ = _setup("S", {"alpha": "-w"})
    report = twist_classifier.classify(t)
    assert report.flags["m_equals_n"]
    assert report.n_group == report.m_group
    n_checks = [c for c in report.certificate.checks if "in N(E,σ)" in c.check]
    assert n_checks and all(c.passed for c in n_checks)


def test_oracle_needs_an_elliptic_translation():
    _, pair, _, _ = _setup("S", {"alpha": "2"})
    with pytest.raises(ClassificationError):
        twist_classifier.brute_force_MN_oracle(pair)


def test_report_json_with_certificates():
    t, _, _, _ = _setup("NC", {"alpha": "2"})
    data = twist_classifier.classify(t).to_json(certificates=True)
    assert data["schema"] == "twistalg/1"
    assert data["type"] == "NC"
    assert data["verified"] is True
    assert data["certificates"]
    assert all(c["passed"] for c in data["certificates"])


def test_elliptic_automorphisms_as_restricted_maps(examples):
    t = examples["two_torsion"]
    _, pair = algebra_catalog.standard_algebra(t)
    curve = t.curve
    flex = curve.flexes()[1]
    translation = twist_classifier.from_elliptic_aut(pair, curve.aut(flex, 0))
    assert twist_classifier.extends_to_P2(translation) is not None
    half_period = twist_classifier.from_elliptic_aut(pair, curve.aut(curve.point(t.point), 0))
    assert twist_classifier.extends_to_P2(half_period) is None
    rotation = twist_classifier.extends_to_P2(twist_classifier.from_elliptic_aut(pair, curve.aut(curve.origin, 1)))
    assert rotation == curve.tau_generator


def test_elliptic_automorphisms_need_an_elliptic_component(q_w):
    _, pair, _, _ = _setup("S", {"alpha": "2"})
    with pytest.raises(ClassificationError):
        twist_classifier.from_elliptic_aut(pair, None)
