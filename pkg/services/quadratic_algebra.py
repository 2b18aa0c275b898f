"""
Quadratic algebras T(V)/(R) on three generators x, y, z and their geometric
pairs (E, σ).

A relation g = Σ c_ij x_i ⊗ x_j is stored as the matrix C = (c_ij) and
evaluated on pairs of points as g(p, q) = p^t C q. For fixed p the three
relations give the pencil matrix M(p) whose k-th row is p^t C_k; E is the
zero set of det M(p) and σ(p) spans ker M(p).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

from core.config import settings
from core.exceptions import (CurveError, InsufficientSamplesError,
                             RelationError, SigmaUndeterminedError)
from core.field import FieldElement, FieldTower
from core.linalg import nullspace, rank, same_row_space
from core.polynomial import (Polynomial, Triple, apply_matrix,
                             evaluate_triple, substitute_triple,
                             triple_is_zero, triples_parallel)
from core.projective import Matrix3, ProjMap, ProjPoint, adjugate3, det3
from core.schemas import Certificate
from services.hesse_curve import CurvePoint, EllipticAut, HesseCurve

logger = logging.getLogger(__name__)

LETTERS = "xyz"


@dataclass(frozen=True)
class RelationSpace:
    basis: Tuple[Matrix3, Matrix3, Matrix3]

    def __post_init__(self):
        if len(self.basis) != 3:
            raise RelationError(f"a relation space needs 3 relations, got {len(self.basis)}")
        if rank(self.vectors()) != 3:
            raise RelationError("the relations are linearly dependent")

    @property
    def tower(self) -> FieldTower:
        return self.basis[0].tower

    def vectors(self) -> List[List[FieldElement]]:
        return [m.entries() for m in self.basis]

    @classmethod
    def from_vectors(cls, tower: FieldTower, vectors: Sequence[Sequence]) -> "RelationSpace":
        return cls(tuple(Matrix3.of(tower, [v[0:3], v[3:6], v[6:9]]) for v in vectors))

    @classmethod
    def from_words(cls, tower: FieldTower, relations: Sequence[Dict[str, Any]]) -> "RelationSpace":
        """Build from dicts such as {"yz": 1, "zy": -alpha}."""
        mats = []
        for rel in relations:
            rows = [[tower.zero] * 3 for _ in range(3)]
            for word, coeff in rel.items():
                if len(word) != 2 or any(ch not in LETTERS for ch in word):
                    raise RelationError(f"{word!r} is not a quadratic word in x, y, z")
                i, j = LETTERS.index(word[0]), LETTERS.index(word[1])
                rows[i][j] = rows[i][j] + tower(coeff)
            mats.append(Matrix3.of(tower, rows))
        return cls(tuple(mats))

    def same_subspace(self, other: "RelationSpace") -> bool:
        return same_row_space(self.vectors(), other.vectors())

    def to_json(self) -> list:
        return [m.to_json() for m in self.basis]

    @classmethod
    def from_json(cls, tower: FieldTower, data: Sequence) -> "RelationSpace":
        return cls(tuple(Matrix3.from_json(tower, m) for m in data))

    def pretty(self) -> List[str]:
        out = []
        for m in self.basis:
            terms = []
            for i in range(3):
                for j in range(3):
                    c = m[i, j]
                    if not c:
                        continue
                    word = f"{LETTERS[i]}{LETTERS[j]}"
                    text = str(c)
                    if text == "1":
                        terms.append(word)
                    elif text == "-1":
                        terms.append(f"-{word}")
                    else:
                        terms.append(f"({text})*{word}" if " " in text else f"{text}*{word}")
            out.append(" + ".join(terms).replace("+ -", "- "))
        return out


class ComponentKind(str, Enum):
    WHOLE_PLANE = "whole-plane"
    LINE = "line"
    CONIC = "conic"
    CUBIC = "cubic"


def _binary_values(tower: FieldTower, count: int) -> List[Tuple[FieldElement, FieldElement]]:
    # Projectively distinct coprime (s, t) ordered by height max(|s|, |t|).
    values: List[Tuple[int, int]] = []
    h = 1
    while len(values) < count:
        candidates = [(h, a) for a in range(-h, h + 1)] + [(a, h) for a in range(-h + 1, h)]
        for s, t in candidates:
            if s < 0 or (s == 0 and t < 0):
                s, t = -s, -t
            if _gcd(s, t) == 1 and (s, t) not in values:
                values.append((s, t))
        h += 1
    return [(tower(a), tower(b)) for a, b in values[:count]]


def _ternary_values(tower: FieldTower, count: int) -> List[Tuple[FieldElement, ...]]:
    base = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (2, -1, 1), (3, 1, -2),
            (1, -3, 2), (2, 3, 5), (5, -2, 1), (1, 4, -1), (4, 1, 3)]
    return [tuple(tower(v) for v in triple) for triple in base[:count]]


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True, eq=False)
class Component:
    """
    One irreducible component of E with σ on it.

    Parametrized components carry a polynomial parametrization (binary, or the
    ternary identity for the whole plane) and a ternary sigma formula. Smooth
    cubics carry a HesseCurve and σ as σ_p τ_E^i, optionally followed by a
    linear ``post_map``.
    """
    kind: ComponentKind
    form: Polynomial
    label: str = ""
    parametrization: Optional[Triple] = None
    sigma: Optional[Triple] = None
    curve: Optional[HesseCurve] = None
    elliptic_sigma: Optional[EllipticAut] = None
    post_map: Optional[ProjMap] = None

    @property
    def is_elliptic(self) -> bool:
        return self.curve is not None

    @property
    def tower(self) -> FieldTower:
        return self.form.tower

    def contains(self, point: ProjPoint) -> bool:
        return not self.form.evaluate(point.coords)

    def sigma_at(self, point: ProjPoint) -> ProjPoint:
        if self.is_elliptic:
            image = self.curve.apply_aut(self.elliptic_sigma, CurvePoint(self.curve, point)).point
            return self.post_map(image) if self.post_map is not None else image
        values = evaluate_triple(self.sigma, point.coords)
        if not any(values):
            raise SigmaUndeterminedError(f"the σ formula on {self.label} vanishes at {point}")
        return ProjPoint.from_vector(values)

    def sigma_on_parametrization(self) -> Triple:
        return substitute_triple(self.sigma, self.parametrization)

    def param_values(self, count: int) -> List[Tuple[FieldElement, ...]]:
        nvars = self.parametrization[0].nvars
        if nvars == 3:
            return _ternary_values(self.tower, count)
        return _binary_values(self.tower, count)

    def sample_points(self, count: int, seeds: Sequence[CurvePoint] = ()) -> List[ProjPoint]:
        """
        Exact points of this component where σ is given by its formula.
        Parameter values hitting a base point of the formula are skipped.
        """
        if self.is_elliptic:
            # Chords through the translation point reach beyond the torsion points.
            seeds = tuple(seeds) or (self.elliptic_sigma.translate,)
            return [p.point for p in self.curve.sample_points(count, seeds)]
        points: List[ProjPoint] = []
        for values in self.param_values(count * 3):
            v = evaluate_triple(self.parametrization, values)
            if not any(v):
                continue
            pt = ProjPoint.from_vector(v)
            if pt in points or not any(evaluate_triple(self.sigma, pt.coords)):
                continue
            points.append(pt)
            if len(points) == count:
                break
        return points

    def compose_linear(self, tau: ProjMap) -> "Component":
        """The same component with σ replaced by τ ∘ σ."""
        if not self.is_elliptic:
            return Component(self.kind, self.form, self.label, self.parametrization,
                             apply_matrix(tau.matrix, self.sigma))
        if self.post_map is None and self.curve.contains(tau(self.curve.origin.point)):
            try:
                outer = self.curve.as_elliptic_aut(tau)
                return Component(self.kind, self.form, self.label, curve=self.curve,
                                 elliptic_sigma=self.curve.compose_auts(outer, self.elliptic_sigma))
            except CurveError:
                pass
        post = tau if self.post_map is None else tau @ self.post_map
        return Component(self.kind, self.form, self.label, curve=self.curve,
                         elliptic_sigma=self.elliptic_sigma, post_map=post)

    def to_json(self) -> dict:
        data = {"kind": self.kind.value, "label": self.label, "form": self.form.to_json()}
        if self.parametrization is not None:
            data["parametrization"] = [p.to_json() for p in self.parametrization]
        if self.sigma is not None:
            data["sigma"] = [p.to_json() for p in self.sigma]
        if self.curve is not None:
            data["curve"] = self.curve.to_json()
            data["elliptic_sigma"] = self.elliptic_sigma.to_json()
        if self.post_map is not None:
            data["post_map"] = self.post_map.to_json()
        return data

    def describe(self) -> dict:
        data = {"kind": self.kind.value, "label": self.label, "form": self.form.pretty()}
        if self.sigma is not None:
            data["sigma"] = [p.pretty() for p in self.sigma]
        if self.elliptic_sigma is not None:
            data["sigma"] = {"translate": str(self.elliptic_sigma.translate),
                             "tau_power": self.elliptic_sigma.power}
        if self.post_map is not None:
            data["post_map"] = self.post_map.pretty()
        return data


@dataclass(frozen=True, eq=False)
class GeometricPair:
    components: Tuple[Component, ...]
    algebra_type: Optional[Any] = None
    name: str = ""

    def __post_init__(self):
        forms = [c.form for c in self.components if c.kind != ComponentKind.WHOLE_PLANE]
        for i in range(len(forms)):
            for j in range(i + 1, len(forms)):
                if forms[i].proportional_to(forms[j]):
                    raise RelationError("components of a geometric pair must be distinct")

    @property
    def tower(self) -> FieldTower:
        return self.components[0].tower

    @property
    def is_whole_plane(self) -> bool:
        return any(c.kind == ComponentKind.WHOLE_PLANE for c in self.components)

    @property
    def elliptic_component(self) -> Optional[Component]:
        for c in self.components:
            if c.is_elliptic:
                return c
        return None

    def variety_form(self) -> Polynomial:
        """Product of the component forms; the zero form for the whole plane."""
        if self.is_whole_plane:
            return Polynomial.zero(self.tower, 3)
        product = Polynomial.constant(self.tower, 3, 1)
        for c in self.components:
            product = product * c.form
        return product

    def contains(self, point: ProjPoint) -> bool:
        return self.is_whole_plane or not self.variety_form().evaluate(point.coords)

    def sigma(self, point: ProjPoint) -> ProjPoint:
        last_error: Optional[Exception] = None
        for c in self.components:
            if not c.contains(point):
                continue
            try:
                return c.sigma_at(point)
            except SigmaUndeterminedError as e:
                last_error = e
        if last_error is not None:
            raise last_error
        raise CurveError(f"{point} is not on E")

    def sigma_inverse(self, point: ProjPoint) -> ProjPoint:
        c = self.elliptic_component
        if c is not None:
            back = c.post_map.inverse()(point) if c.post_map is not None else point
            inv = c.curve.inverse_aut(c.elliptic_sigma)
            return c.curve.apply_aut(inv, CurvePoint(c.curve, back)).point
        return sigma_inverse_from_pencil(self.relations, point)

    def sigma_power(self, point: ProjPoint, k: int) -> ProjPoint:
        for _ in range(abs(k)):
            point = self.sigma(point) if k > 0 else self.sigma_inverse(point)
        return point

    @cached_property
    def relations(self) -> RelationSpace:
        return reconstruct_G2(self)

    def sample_points(self, per_component: Optional[int] = None,
                      seeds: Sequence[CurvePoint] = ()) -> List[Tuple[int, ProjPoint]]:
        out = []
        for i, c in enumerate(self.components):
            count = per_component or (settings.curve_sample_count if c.is_elliptic else settings.param_sample_count)
            out.extend((i, p) for p in c.sample_points(count, seeds))
        return out

    def compose_linear(self, tau: ProjMap) -> "GeometricPair":
        """The pair (E, τ|_E ∘ σ)."""
        return GeometricPair(tuple(c.compose_linear(tau) for c in self.components), None,
                             f"{self.name} twisted" if self.name else "twisted")

    def to_json(self) -> dict:
        return {"name": self.name, "components": [c.to_json() for c in self.components]}

    def describe(self) -> dict:
        return {"name": self.name, "components": [c.describe() for c in self.components]}


# Pencil


def pencil_rows(relations: RelationSpace, v: Sequence) -> List[list]:
    """Rows v^t C_k, for v a vector of field elements or of polynomials."""
    return [[v[0] * m[0, j] + v[1] * m[1, j] + v[2] * m[2, j] for j in range(3)] for m in relations.basis]


def pencil_columns(relations: RelationSpace, q: Sequence) -> List[list]:
    """Rows (C_k q)^t, the pencil for the first tensor slot."""
    return [[m[i, 0] * q[0] + m[i, 1] * q[1] + m[i, 2] * q[2] for i in range(3)] for m in relations.basis]


def pencil_determinant(relations: RelationSpace) -> Polynomial:
    """det M(x, y, z) as a ternary cubic; the zero cubic means E = P^2."""
    return det3(pencil_rows(relations, Polynomial.variables(relations.tower, 3)))


def generic_sigma(relations: RelationSpace) -> Optional[Triple]:
    """First nonzero adjugate column of the symbolic pencil, σ on a dense part of E."""
    adj = adjugate3(pencil_rows(relations, Polynomial.variables(relations.tower, 3)))
    for j in range(3):
        column = tuple(adj[i][j] for i in range(3))
        if not triple_is_zero(column):
            return column
    return None


def _kernel_point(rows: List[List[FieldElement]], what: str, point: ProjPoint) -> ProjPoint:
    if det3(rows):
        raise RelationError(f"{point} is not on the point variety ({what} has rank 3)")
    adj = adjugate3(rows)
    for j in range(3):
        column = [adj[i][j] for i in range(3)]
        if any(column):
            return ProjPoint.from_vector(column)
    raise SigmaUndeterminedError(f"σ is not determined at {point}: {what} has rank at most 1")


def sigma_from_pencil(relations: RelationSpace, p: ProjPoint) -> ProjPoint:
    """σ(p) read off a nonzero adjugate column of M(p)."""
    return _kernel_point(pencil_rows(relations, p.coords), "M(p)", p)


def sigma_inverse_from_pencil(relations: RelationSpace, q: ProjPoint) -> ProjPoint:
    """The p with g(p, q) = 0 for all relations g."""
    return _kernel_point(pencil_columns(relations, q.coords), "the transposed pencil", q)


# (G1) and (G2)


def verify_G1(relations: RelationSpace, pair: GeometricPair) -> Certificate:
    """
    Check that the zero set of the relations is the graph of σ on E.

    Returns:
        Certificate whose ``passed`` is the (G1) verdict, one record per check
    """
    cert = Certificate(passed=True)
    det = pencil_determinant(relations)
    if pair.is_whole_plane:
        cert.add("variety", det.is_zero(), "pencil determinant is the zero cubic" if det.is_zero()
                 else f"pencil determinant {det.pretty()} is not zero")
    else:
        product = pair.variety_form()
        scale = det.scalar_multiple_of(product)
        cert.add("variety", scale is not None,
                 f"det = ({scale}) * ({product.pretty()})" if scale is not None
                 else f"det = {det.pretty()} is not a multiple of {product.pretty()}")

    for c in pair.components:
        name = f"sigma on {c.label or c.kind.value}"
        if c.is_elliptic:
            samples = c.sample_points(settings.curve_sample_count)
            if len(samples) < 10:
                cert.add(name, False, f"only {len(samples)} exact sample points")
                continue
            mismatches = 0
            for p in samples:
                try:
                    if sigma_from_pencil(relations, p) != c.sigma_at(p):
                        mismatches += 1
                except (RelationError, SigmaUndeterminedError):
                    mismatches += 1
            cert.add(name, mismatches == 0, f"{len(samples)} sample points, {mismatches} mismatches")
            continue
        phi = c.parametrization
        on_component = c.form.substitute(phi).is_zero() if c.kind != ComponentKind.WHOLE_PLANE else True
        image = c.sigma_on_parametrization()
        lands_in_E = pair.is_whole_plane or pair.variety_form().substitute(image).is_zero()
        adj = adjugate3(pencil_rows(relations, phi))
        columns = [tuple(adj[i][j] for i in range(3)) for j in range(3)]
        nonzero = [col for col in columns if not triple_is_zero(col)]
        parallel = bool(nonzero) and not triple_is_zero(image) and all(triples_parallel(col, image) for col in nonzero)
        ok = on_component and lands_in_E and parallel
        detail = "symbolic: adjugate columns parallel to the σ formula" if ok else (
            "parametrization leaves the component" if not on_component else
            "σ formula leaves E" if not lands_in_E else
            "adjugate columns are not parallel to the σ formula")
        cert.add(name, ok, detail)
    if not cert.passed:
        logger.info(f"(G1) failed for {pair.name or 'pair'}: {[c.check for c in cert.checks if not c.passed]}")
    return cert


def _pair_row(p: Sequence[FieldElement], q: Sequence[FieldElement]) -> List[FieldElement]:
    return [p[i] * q[j] for i in range(3) for j in range(3)]


def reconstruct_G2(pair: GeometricPair) -> RelationSpace:
    """
    The relations vanishing on the graph of σ: R = {g : g(p, σ(p)) = 0 on E}.

    Parametrized components contribute the coefficients of g(φ, σ∘φ) as
    polynomial identities; cubic components contribute 12 sample points and
    10 held-out points for verification.

    Raises:
        RelationError: when the kernel is not 3-dimensional or fails the held-out points
    """
    tower = pair.tower
    rows: List[List[FieldElement]] = []
    held_out: List[List[FieldElement]] = []
    for c in pair.components:
        if c.is_elliptic:
            samples = c.sample_points(settings.curve_sample_count)
            if len(samples) < 12:
                raise InsufficientSamplesError(f"only {len(samples)} exact points on {c.label}")
            for k, p in enumerate(samples):
                row = _pair_row(p.coords, c.sigma_at(p).coords)
                (rows if k < 12 else held_out).append(row)
            continue
        phi = c.parametrization
        image = c.sigma_on_parametrization()
        products = [phi[i] * image[j] for i in range(3) for j in range(3)]
        monomials = sorted({m for prod in products for m in prod.terms})
        for m in monomials:
            rows.append([prod.terms.get(m, tower.zero) for prod in products])
    kernel = nullspace(rows, 9, tower.zero, tower.one)
    if len(kernel) != 3:
        raise RelationError(f"the relations vanishing on the graph of σ span dimension {len(kernel)}, not 3")
    for row in held_out:
        for v in kernel:
            if sum((a * b for a, b in zip(row, v)), tower.zero):
                raise RelationError("reconstructed relations fail on a held-out point")
    return RelationSpace.from_vectors(tower, kernel)


# Twisting


def twist_relations(relations: RelationSpace, phi: Matrix3) -> RelationSpace:
    """
    R^φ = (1 ⊗ φ^{-1})(R): each coefficient matrix C becomes C (φ^{-1})^t.

    Raises:
        RelationError: when φ is singular
    """
    if not phi.det():
        raise RelationError("the twisting map φ is singular")
    right = phi.inverse().transpose()
    return RelationSpace(tuple(c @ right for c in relations.basis))


def twist_point_map(phi: Matrix3) -> ProjMap:
    """The point map τ = P(φ*) paired with φ: g'(p, τ q) = g(p, q)."""
    return ProjMap.of(phi.transpose())


def geometric_twist_check(relations: RelationSpace, phi: Matrix3, pair: GeometricPair) -> bool:
    """
    Compare the algebraic twist (1 ⊗ φ^{-1})R with the (G2) reconstruction of
    (E, τ|_E σ) as exact subspaces of V ⊗ V.
    """
    algebraic = twist_relations(relations, phi)
    geometric = reconstruct_G2(pair.compose_linear(twist_point_map(phi)))
    agree = algebraic.same_subspace(geometric)
    if not agree:
        logger.info(f"Algebraic and geometric twists disagree for {pair.name or 'pair'}")
    return agree
