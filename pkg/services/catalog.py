"""
The standard geometric quadratic algebras A(E, σ) on three generators and
the decompositions Aut(P^2 ↓ E) = Z(E) ⋊ G(E) of their point varieties.

Every entry is built from exact data: the three relations, the components of
E with a parametrization and a σ formula (or a Hesse curve and a translation
for the elliptic type), and the two symbolic groups with generators.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Optional, Tuple

from core.exceptions import ExpressionError, ParameterError
from core.expressions import parse_point, parse_scalar
from core.field import FieldElement, FieldTower
from core.polynomial import Polynomial
from core.projective import ProjMap, ProjPoint
from core.towers import load_tower
from services.group_desc import (DiagPowerFamily, DiagTorus2, FullPGL3,
                                 GroupDesc, Semidirect, TranslationTorsion,
                                 Trivial, TypeTFamily, UnipotentFamily,
                                 diag_torus1, finite_cyclic)
from services.hesse_curve import HesseCurve
from services.quadratic_algebra import (Component, ComponentKind,
                                        GeometricPair, RelationSpace)

logger = logging.getLogger(__name__)

DEFAULT_TOWER = "q_w"
DEFAULT_EC_TOWER = "q_w_cbrt2"


class AlgebraTypeTag(str, Enum):
    P = "P"
    S = "S"
    S_PRIME = "S'"
    T = "T"
    T_PRIME = "T'"
    NC = "NC"
    CC = "CC"
    EC = "EC"

    @classmethod
    def parse(cls, text: str) -> "AlgebraTypeTag":
        normalized = text.strip().replace("′", "'").upper()
        if normalized.endswith("PRIME"):
            normalized = normalized[:-5] + "'"
        for tag in cls:
            if tag.value == normalized:
                return tag
        raise ParameterError(f"unknown algebra type {text!r}; expected one of {[t.value for t in cls]}",
                             code="unknown_type")

    @property
    def has_alpha(self) -> bool:
        return self in (AlgebraTypeTag.S, AlgebraTypeTag.S_PRIME, AlgebraTypeTag.NC)


@dataclass(frozen=True)
class AlgebraType:
    """
    A row of the catalog with its parameters.

    S, S' and NC take α with α^3 ∉ {0, 1}. EC takes the point p = (α, β, γ)
    with αβγ != 0 and (α^3 + β^3 + γ^3)^3 != (3αβγ)^3; its curve is the Hesse
    curve through p with λ = (α^3 + β^3 + γ^3) / (3αβγ).
    """
    tag: AlgebraTypeTag
    tower: FieldTower
    alpha: Optional[FieldElement] = None
    point: Optional[ProjPoint] = None

    def __post_init__(self):
        if self.tag.has_alpha:
            if self.alpha is None:
                raise ParameterError(f"type {self.tag.value} needs the parameter alpha")
            if not self.alpha or self.alpha ** 3 == 1:
                raise ParameterError(f"type {self.tag.value} needs alpha^3 not in {{0, 1}}, got alpha = {self.alpha}")
        elif self.alpha is not None:
            raise ParameterError(f"type {self.tag.value} takes no parameter alpha")
        if self.tag == AlgebraTypeTag.EC:
            if self.point is None:
                raise ParameterError("type EC needs the point p = (alpha, beta, gamma)")
            a, b, c = self.point.coords
            product = a * b * c
            cubes = a ** 3 + b ** 3 + c ** 3
            if not product:
                raise ParameterError(f"type EC needs alpha*beta*gamma != 0, got p = {self.point}")
            if cubes ** 3 == (3 * product) ** 3:
                raise ParameterError(f"type EC needs (a^3+b^3+c^3)^3 != (3abc)^3, got p = {self.point}")
        elif self.point is not None:
            raise ParameterError(f"type {self.tag.value} takes no point parameter")

    @property
    def lam(self) -> FieldElement:
        if self.tag != AlgebraTypeTag.EC:
            raise ParameterError(f"type {self.tag.value} has no Hesse parameter")
        a, b, c = self.point.coords
        return (a ** 3 + b ** 3 + c ** 3) / (3 * a * b * c)

    @cached_property
    def curve(self) -> HesseCurve:
        return HesseCurve(self.lam)

    def key(self) -> Tuple:
        return (self.tag.value, self.tower.label or repr(self.tower),
                None if self.alpha is None else self.alpha.coeffs,
                None if self.point is None else tuple(c.coeffs for c in self.point.coords))

    def params_json(self) -> dict:
        if self.alpha is not None:
            return {"alpha": str(self.alpha)}
        if self.point is not None:
            return {"p": str(self.point), "lambda": str(self.lam)}
        return {}

    def to_json(self) -> dict:
        return {"type": self.tag.value, "params": self.params_json(), "tower": self.tower.label}


PRINTED_T_PRIME_RELATIONS = (
    {"yz": 1, "zy": -1, "xy": 1, "yx": 1},
    {"zx": 1, "xz": -1, "xx": 1, "yz": -1, "zy": -1, "yy": 1},
    {"xy": 1, "yx": -1, "yy": -1},
)


class AlgebraCatalog:
    def __init__(self):
        self._algebras: Dict[Tuple, Tuple[RelationSpace, GeometricPair]] = {}
        self._groups: Dict[Tuple, Tuple[GroupDesc, GroupDesc]] = {}

    def make_type(self, tag: str, params: Optional[Dict[str, str]] = None,
                  tower: Optional[str] = None) -> AlgebraType:
        """
        Build an AlgebraType from command-line style strings.

        Args:
            tag: Type tag such as "S", "S'" or "EC"
            params: alpha for S, S', NC; p (or alpha, beta, gamma) and optionally lambda for EC
            tower: Tower name or path; defaults depend on the type

        Returns:
            The validated AlgebraType
        """
        kind = AlgebraTypeTag.parse(tag)
        params = dict(params or {})
        field = load_tower(tower or (DEFAULT_EC_TOWER if kind == AlgebraTypeTag.EC else DEFAULT_TOWER))
        if kind.has_alpha:
            alpha = parse_scalar(params.pop("alpha", "2"), field)
            self._reject_unknown(kind, params)
            return AlgebraType(kind, field, alpha=alpha)
        if kind == AlgebraTypeTag.EC:
            lam_text = params.pop("lambda", None)
            if "p" in params:
                point = parse_point(params.pop("p"), field)
            elif {"alpha", "beta", "gamma"} <= set(params):
                point = ProjPoint.of(field, *(parse_scalar(params.pop(k), field) for k in ("alpha", "beta", "gamma")))
            elif not params and lam_text is None:
                point = ProjPoint.of(field, 1, 1, -field.gen("c"))
            else:
                raise ParameterError("type EC needs p=(a,b,c) or alpha, beta and gamma")
            self._reject_unknown(kind, params)
            algebra_type = AlgebraType(kind, field, point=point)
            if lam_text is not None and parse_scalar(lam_text, field) != algebra_type.lam:
                raise ParameterError(f"p = {point} lies on the Hesse curve with lambda = {algebra_type.lam}, "
                                     f"not {lam_text}")
            return algebra_type
        self._reject_unknown(kind, params)
        return AlgebraType(kind, field)

    @staticmethod
    def _reject_unknown(kind: AlgebraTypeTag, params: Dict[str, str]) -> None:
        if params:
            raise ExpressionError(f"unknown parameters for type {kind.value}: {sorted(params)}")

    def default_type(self, tag: AlgebraTypeTag) -> AlgebraType:
        return self.make_type(tag.value)

    # Relations and point varieties

    def standard_algebra(self, t: AlgebraType) -> Tuple[RelationSpace, GeometricPair]:
        """
        The relations of the catalog row and its geometric pair (E, σ).

        Raises:
            ParameterError: when the row constraints fail
            TowerTooSmallError: when the row needs a cube root of unity the tower lacks
        """
        key = t.key()
        if key not in self._algebras:
            builder = getattr(self, f"_build_{t.tag.name.lower()}")
            relations, components = builder(t)
            pair = GeometricPair(tuple(components), t, t.tag.value)
            self._algebras[key] = (relations, pair)
            logger.info(f"Built catalog entry {t.tag.value} {t.params_json()}")
        return self._algebras[key]

    def _build_p(self, t: AlgebraType):
        f = t.tower
        x, y, z = Polynomial.variables(f, 3)
        relations = RelationSpace.from_words(f, [{"yz": 1, "zy": -1}, {"zx": 1, "xz": -1}, {"xy": 1, "yx": -1}])
        plane = Component(ComponentKind.WHOLE_PLANE, Polynomial.zero(f, 3), "P2", (x, y, z), (x, y, z))
        return relations, [plane]

    def _build_s(self, t: AlgebraType):
        f, a = t.tower, t.alpha
        x, y, z = Polynomial.variables(f, 3)
        s, u = Polynomial.variables(f, 2)
        zero = Polynomial.zero(f, 2)
        relations = RelationSpace.from_words(f, [{"yz": 1, "zy": -a}, {"zx": 1, "xz": -a}, {"xy": 1, "yx": -a}])
        return relations, [
            Component(ComponentKind.LINE, x, "V(x)", (zero, s, u), (x, y, a * z)),
            Component(ComponentKind.LINE, y, "V(y)", (s, zero, u), (a * x, y, z)),
            Component(ComponentKind.LINE, z, "V(z)", (s, u, zero), (x, a * y, z)),
        ]

    def _build_s_prime(self, t: AlgebraType):
        f, a = t.tower, t.alpha
        lam = (a ** 3 - 1) / a
        x, y, z = Polynomial.variables(f, 3)
        s, u = Polynomial.variables(f, 2)
        zero = Polynomial.zero(f, 2)
        relations = RelationSpace.from_words(f, [{"yz": 1, "zy": -a, "xx": 1}, {"zx": 1, "xz": -a},
                                                 {"xy": 1, "yx": -a}])
        return relations, [
            Component(ComponentKind.LINE, x, "V(x)", (zero, s, u), (x, y, a * z)),
            Component(ComponentKind.CONIC, x * x - lam * y * z, "V(x^2 - λyz)",
                      (lam * s * u, lam * s * s, u * u), (x, a * y, z * a.inverse())),
        ]

    def _build_t(self, t: AlgebraType):
        f = t.tower
        w = f.primitive_cube_root()
        x, y, z = Polynomial.variables(f, 3)
        s, u = Polynomial.variables(f, 2)
        relations = RelationSpace.from_words(f, [{"yz": 1, "zy": -1, "xx": 1}, {"zx": 1, "xz": -1, "yy": 1},
                                                 {"xy": 1, "yx": -1}])
        components = []
        for k, label in enumerate(("V(x + y)", "V(wx + y)", "V(w^2x + y)")):
            e = w ** k
            components.append(Component(ComponentKind.LINE, e * x + y, label,
                                        (s, -e * s, u), (x, y, e * e * x + z)))
        return relations, components

    def _build_t_prime(self, t: AlgebraType):
        f = t.tower
        x, y, z = Polynomial.variables(f, 3)
        s, u = Polynomial.variables(f, 2)
        zero = Polynomial.zero(f, 2)
        # Printed relations with x and y exchanged, see PRINTED_T_PRIME_RELATIONS.
        relations = RelationSpace.from_words(f, [
            {"xz": 1, "zx": -1, "yx": 1, "xy": 1},
            {"zy": 1, "yz": -1, "yy": 1, "xz": -1, "zx": -1, "xx": 1},
            {"yx": 1, "xy": -1, "xx": -1},
        ])
        return relations, [
            Component(ComponentKind.LINE, x, "V(x)", (zero, s, u), (x, y, y + z)),
            Component(ComponentKind.CONIC, y * y - x * z, "V(y^2 - xz)",
                      (s * s, s * u, u * u), (x, y - x, x - 2 * y + z)),
        ]

    def _build_nc(self, t: AlgebraType):
        f, a = t.tower, t.alpha
        lam = (a ** 3 - 1) / a
        x, y, z = Polynomial.variables(f, 3)
        s, u = Polynomial.variables(f, 2)
        relations = RelationSpace.from_words(f, [{"yz": 1, "zy": -a, "xx": 1}, {"zx": 1, "xz": -a, "yy": 1},
                                                 {"xy": 1, "yx": -a}])
        cubic = Component(ComponentKind.CUBIC, x ** 3 + y ** 3 - lam * x * y * z, "V(x^3 + y^3 - λxyz)",
                          (lam * s * s * u, lam * s * u * u, s ** 3 + u ** 3),
                          (x * y, a * y * y, a * a * y * z - x * x))
        return relations, [cubic]

    def _build_cc(self, t: AlgebraType):
        f = t.tower
        x, y, z = Polynomial.variables(f, 3)
        s, u = Polynomial.variables(f, 2)
        relations = RelationSpace.from_words(f, [
            {"yz": 1, "zy": -1, "yy": 1, "xx": 3},
            {"zx": 1, "xz": -1, "yx": 1, "xy": 1, "yz": -1, "zy": -1},
            {"xy": 1, "yx": -1, "yy": -1},
        ])
        cusp = Component(ComponentKind.CUBIC, x ** 3 - y * y * z, "V(x^3 - y^2z)",
                         (s * u * u, u ** 3, s ** 3),
                         (x * y - y * y, y * y, -3 * x * x + 3 * x * y - y * y + y * z))
        return relations, [cusp]

    def _build_ec(self, t: AlgebraType):
        f = t.tower
        a, b, c = t.point.coords
        relations = RelationSpace.from_words(f, [{"yz": a, "zy": b, "xx": c}, {"zx": a, "xz": b, "yy": c},
                                                 {"xy": a, "yx": b, "zz": c}])
        curve = t.curve
        p = curve.point(t.point)
        elliptic = Component(ComponentKind.CUBIC, curve.form, "E", curve=curve, elliptic_sigma=curve.aut(p, 0))
        return relations, [elliptic]

    def printed_t_prime_relations(self, tower: FieldTower) -> RelationSpace:
        return RelationSpace.from_words(tower, PRINTED_T_PRIME_RELATIONS)

    # Automorphism groups of E

    def table2_groups(self, t: AlgebraType) -> Tuple[GroupDesc, GroupDesc]:
        """(Z(E), G(E)) with Aut(P^2 ↓ E) = Z(E) ⋊ G(E)."""
        key = t.key()
        if key in self._groups:
            return self._groups[key]
        f = t.tower
        tag = t.tag
        swap_xy = ProjMap.from_rows(f, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        if tag == AlgebraTypeTag.P:
            groups = (FullPGL3(), Trivial(f))
        elif tag == AlgebraTypeTag.S:
            cycle = ProjMap.from_rows(f, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
            groups = (Semidirect(DiagTorus2(), finite_cyclic(cycle, "<(x y z)>")),
                      finite_cyclic(swap_xy, "<(x y)>"))
        elif tag == AlgebraTypeTag.S_PRIME:
            swap_yz = ProjMap.from_rows(f, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])
            groups = (diag_torus1(), finite_cyclic(swap_yz, "<(y z)>"))
        elif tag == AlgebraTypeTag.T:
            flip = ProjMap.from_rows(f, [[0, 1, 0], [1, 0, 0], [0, 0, -1]])
            groups = (Semidirect(TypeTFamily(), finite_cyclic(flip, "<[[0,1,0],[1,0,0],[0,0,-1]]>")),
                      DiagPowerFamily(0, 1, label="diag(1,1,i)"))
        elif tag == AlgebraTypeTag.T_PRIME:
            groups = (UnipotentFamily(), DiagPowerFamily(1, 2, label="diag(1,e,e^2)"))
        elif tag == AlgebraTypeTag.NC:
            w = f.primitive_cube_root()
            groups = (finite_cyclic(ProjMap.from_rows(f, [[1, 0, 0], [0, w, 0], [0, 0, w * w]]), "<diag(1,w,w^2)>"),
                      finite_cyclic(swap_xy, "<(x y)>"))
        elif tag == AlgebraTypeTag.CC:
            groups = (Trivial(f), DiagPowerFamily(1, -2, label="diag(1,e,e^-2)"))
        else:
            curve = t.curve
            seeds = (curve.point(t.point),)
            groups = (TranslationTorsion(curve.translation_group(seeds)),
                      finite_cyclic(curve.tau_generator, "<τ_E>"))
        self._groups[key] = groups
        return groups


algebra_catalog = AlgebraCatalog()
