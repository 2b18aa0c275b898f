"""
One method per command verb. The CLI and the HTTP routers both call these and
only differ in how they ship the resulting JSON document.
"""

import logging
from typing import Any, Dict, List, Optional

from core.exceptions import ExpressionError, SigmaUndeterminedError
from core.expressions import parse_matrix, parse_point, parse_scalar
from core.schemas import SCHEMA_VERSION
from core.towers import available_towers, load_tower
from services.acceptance_suites import acceptance_suites
from services.catalog import DEFAULT_TOWER, AlgebraTypeTag, algebra_catalog
from services.graded_truncation import truncation_dims
from services.hesse_curve import HesseCurve
from services.quadratic_algebra import (RelationSpace, generic_sigma,
                                        geometric_twist_check,
                                        pencil_determinant, sigma_from_pencil,
                                        twist_point_map, twist_relations)
from services.twist_classifier import twist_classifier

logger = logging.getLogger(__name__)

CURVE_OPS = ("add", "neg", "mul", "torsion", "j")


def _document(**fields) -> dict:
    return {"schema": SCHEMA_VERSION, **fields}


class AlgebraOrchestrator:
    def __init__(self):
        self.catalog = algebra_catalog
        self.classifier = twist_classifier

    # catalog

    def catalog_list(self) -> dict:
        """Every catalog row at its default parameters."""
        rows = [self._catalog_row(self.catalog.default_type(tag)) for tag in AlgebraTypeTag]
        return _document(types=rows, towers=available_towers())

    def catalog_show(self, type_tag: str, params: Optional[Dict[str, str]] = None,
                     tower: Optional[str] = None) -> dict:
        t = self.catalog.make_type(type_tag, params, tower)
        return _document(**self._catalog_row(t))

    def _catalog_row(self, t) -> dict:
        relations, pair = self.catalog.standard_algebra(t)
        z_e, g_e = self.catalog.table2_groups(t)
        row = t.to_json()
        row.update({
            "relations": relations.pretty(),
            "point_variety": pair.describe(),
            "determinant": pencil_determinant(relations).pretty(),
            "Z(E)": z_e.label,
            "G(E)": g_e.label,
        })
        return row

    # pointvariety

    def point_variety(self, document: Dict[str, Any]) -> dict:
        """
        Pencil determinant and σ of user relations.

        The document is {"tower": name, "relations": [{"xy": "1", "yx": "-w"}, ...],
        "points": ["(1,0,0)", ...]}; σ is evaluated at the optional points.
        """
        if not isinstance(document, dict) or "relations" not in document:
            raise ExpressionError("a relations document needs a 'relations' list")
        tower = load_tower(document.get("tower") or DEFAULT_TOWER)
        words = []
        for rel in document["relations"]:
            if not isinstance(rel, dict):
                raise ExpressionError(f"each relation must map words to coefficients, got {rel!r}")
            words.append({word: parse_scalar(str(coeff), tower) for word, coeff in rel.items()})
        relations = RelationSpace.from_words(tower, words)
        det = pencil_determinant(relations)
        sigma = generic_sigma(relations)
        result = _document(
            tower=tower.label,
            relations=relations.pretty(),
            determinant=det.pretty(),
            whole_plane=det.is_zero(),
            sigma=[c.pretty() for c in sigma] if sigma is not None else None,
        )
        points = document.get("points") or []
        if points:
            result["sigma_at"] = [self._sigma_at(relations, parse_point(str(p), tower)) for p in points]
        return result

    @staticmethod
    def _sigma_at(relations: RelationSpace, point) -> dict:
        try:
            return {"p": str(point), "sigma": str(sigma_from_pencil(relations, point))}
        except SigmaUndeterminedError as e:
            return {"p": str(point), "sigma": None, "detail": e.detail}

    # twist

    def twist(self, type_tag: str, phi: str, params: Optional[Dict[str, str]] = None,
              tower: Optional[str] = None, check_geometric: bool = False) -> dict:
        t = self.catalog.make_type(type_tag, params, tower)
        relations, pair = self.catalog.standard_algebra(t)
        matrix = parse_matrix(phi, t.tower)
        twisted = twist_relations(relations, matrix)
        result = _document(
            **t.to_json(),
            phi=matrix.pretty(),
            point_map=twist_point_map(matrix).pretty(),
            relations=relations.pretty(),
            twisted_relations=twisted.pretty(),
            hilbert_dims=truncation_dims(twisted, 4),
        )
        if check_geometric:
            result["geometric_check"] = geometric_twist_check(relations, matrix, pair)
        return result

    # classify

    def classify(self, type_tag: str, params: Optional[Dict[str, str]] = None,
                 tower: Optional[str] = None, certificates: bool = False,
                 seed: Optional[int] = None) -> dict:
        t = self.catalog.make_type(type_tag, params, tower)
        report = self.classifier.classify(t, seed)
        result = report.to_json(certificates)
        result["twist_family_members"] = [m.to_json() for m in self.classifier.twist_family(t, seed)]
        return result

    # curve

    def curve(self, op: str, lam: str, tower: Optional[str] = None, p: Optional[str] = None,
              q: Optional[str] = None, n: Optional[int] = None) -> dict:
        """
        Group-law utilities on x^3 + y^3 + z^3 = 3λxyz with o = (1, -1, 0).

        Raises:
            ExpressionError: for an unknown op or missing operands
        """
        if op not in CURVE_OPS:
            raise ExpressionError(f"unknown curve operation {op!r}; expected one of {list(CURVE_OPS)}")
        field = load_tower(tower or DEFAULT_TOWER)
        curve = HesseCurve(parse_scalar(lam, field))
        base = _document(op=op, tower=field.label, **{"lambda": str(curve.lam)})
        if op == "j":
            return {**base, "j": str(curve.j_invariant())}
        if op == "torsion":
            if n is None:
                raise ExpressionError("curve torsion needs --n")
            torsion = curve.torsion_points(n)
            return {**base, "n": n, "points": [str(pt) for pt in torsion.points]}
        first = curve.point(self._require(p, "--p", field))
        if op == "neg":
            return {**base, "p": str(first), "result": str(-first)}
        if op == "mul":
            if n is None:
                raise ExpressionError("curve mul needs --n")
            return {**base, "p": str(first), "n": n, "result": str(n * first)}
        second = curve.point(self._require(q, "--q", field))
        return {**base, "p": str(first), "q": str(second), "result": str(first + second)}

    @staticmethod
    def _require(text: Optional[str], flag: str, field):
        if text is None:
            raise ExpressionError(f"this curve operation needs {flag}")
        return parse_point(text, field)

    # verify

    def verify(self, suite: str, seed: Optional[int] = None) -> dict:
        return acceptance_suites.run(suite, seed)

    @staticmethod
    def suites() -> List[str]:
        return acceptance_suites.names


algebra_orchestrator = AlgebraOrchestrator()
