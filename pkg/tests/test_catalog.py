import pytest

from core.exceptions import (ExpressionError, ParameterError,
                             TowerTooSmallError)
from services.catalog import AlgebraType, AlgebraTypeTag, algebra_catalog
from services.group_desc import Trivial


@pytest.mark.parametrize("text,tag", [("S'", AlgebraTypeTag.S_PRIME), ("s′", AlgebraTypeTag.S_PRIME),
                                      ("TPRIME", AlgebraTypeTag.T_PRIME), (" cc ", AlgebraTypeTag.CC),
                                      ("EC", AlgebraTypeTag.EC)])
def test_tag_parsing(text, tag):
    assert AlgebraTypeTag.parse(text) == tag


def test_unknown_tag():
    with pytest.raises(ParameterError) as e:
        AlgebraTypeTag.parse("Q")
    assert e.value.code == "unknown_type"


def test_alpha_types(w):
    assert algebra_catalog.make_type("S").alpha == 2
    t = algebra_catalog.make_type("S", {"alpha": "-w"})
    assert t.alpha == -w
    assert t.to_json() == {"type": "S", "params": {"alpha": "-w"}, "tower": "q_w"}


@pytest.mark.parametrize("alpha", ["0", "1", "w", "w^2"])
def test_alpha_cube_must_avoid_zero_and_one(alpha):
    with pytest.raises(ParameterError):
        algebra_catalog.make_type("NC", {"alpha": alpha})


def test_unknown_parameters_are_expression_errors():
    with pytest.raises(ExpressionError):
        algebra_catalog.make_type("P", {"alpha": "2"})
    with pytest.raises(ExpressionError):
        algebra_catalog.make_type("S", {"alpha": "2", "beta": "3"})


def test_alpha_on_a_parameterless_type(q_w):
    with pytest.raises(ParameterError):
        AlgebraType(AlgebraTypeTag.T, q_w, alpha=q_w(2))


def test_default_elliptic_type(q_w_cbrt2):
    t = algebra_catalog.make_type("EC")
    assert t.tower is q_w_cbrt2
    assert t.lam == 0
    assert t.curve.j_invariant() == 0
    assert t.params_json()["lambda"] == "0"


def test_elliptic_point_forms(q_w_cbrt2):
    by_point = algebra_catalog.make_type("EC", {"p": "(1, 1, -c)", "lambda": "0"})
    by_coords = algebra_catalog.make_type("EC", {"alpha": "1", "beta": "1", "gamma": "-c"})
    assert by_point == by_coords


def test_elliptic_lambda_must_match_the_point():
    with pytest.raises(ParameterError):
        algebra_catalog.make_type("EC", {"p": "(1, 1, -c)", "lambda": "2"})


@pytest.mark.parametrize("params", [{"p": "(1, 0, -1)"}, {"p": "(1, 1, 1)"}, {"beta": "2"}, {"lambda": "0"}])
def test_degenerate_elliptic_parameters(params):
    with pytest.raises(ParameterError):
        algebra_catalog.make_type("EC", params)


def test_types_needing_a_cube_root_of_unity():
    with pytest.raises(TowerTooSmallError) as e:
        algebra_catalog.standard_algebra(algebra_catalog.make_type("T", tower="q"))
    assert e.value.missing_polynomial == "X^2 + X + 1"


def test_standard_algebra_is_cached():
    t = algebra_catalog.make_type("S'", {"alpha": "3"})
    assert algebra_catalog.standard_algebra(t) is algebra_catalog.standard_algebra(t)


def test_point_variety_components():
    _, pair = algebra_catalog.standard_algebra(algebra_catalog.make_type("S"))
    assert len(pair.components) == 3
    _, pair = algebra_catalog.standard_algebra(algebra_catalog.make_type("T'"))
    assert [c.kind.value for c in pair.components] == ["line", "conic"]
    _, pair = algebra_catalog.standard_algebra(algebra_catalog.make_type("P"))
    assert pair.is_whole_plane


def test_table2_groups():
    z_e, g_e = algebra_catalog.table2_groups(algebra_catalog.make_type("NC"))
    assert z_e.order() == 3
    assert g_e.order() == 2
    z_e, _ = algebra_catalog.table2_groups(algebra_catalog.make_type("CC"))
    assert isinstance(z_e, Trivial)
    z_e, g_e = algebra_catalog.table2_groups(algebra_catalog.make_type("EC"))
    assert len(z_e.elements()) == 9
    assert g_e.order() == 6
