import pytest

from core.exceptions import ParameterError
from services.acceptance_suites import acceptance_suites, ec_examples


def test_suite_names():
    assert acceptance_suites.names == ["groupaxioms", "lemma48", "table1", "table3", "table4"]


def test_unknown_suite():
    with pytest.raises(ParameterError) as e:
        acceptance_suites.run("table9")
    assert e.value.code == "unknown_suite"


def test_elliptic_examples_lie_on_their_curves():
    for name, t in ec_examples().items():
        assert not t.curve.form.evaluate(t.point.coords), name
    assert ec_examples()["two_torsion"].lam == 0


def test_catalog_certification():
    document = acceptance_suites.run("table1")
    assert document["suite"] == "table1"
    assert document["passed"], [c for c in document["checks"] if not c["passed"]]
    assert len(document["checks"]) == 8 * 4


def test_group_axioms_with_a_fixed_seed():
    document = acceptance_suites.run("groupaxioms", seed=7)
    assert document["seed"] == 7
    assert document["passed"], [c for c in document["checks"] if not c["passed"]]


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["table3", "table4", "lemma48"])
def test_classification_suites(suite):
    document = acceptance_suites.run(suite)
    assert document["passed"], [c for c in document["checks"] if not c["passed"]]
