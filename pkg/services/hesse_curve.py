"""
Plane elliptic curves in Hesse form E = V(x^3 + y^3 + z^3 - 3λxyz).

Group law: chord-tangent with zero element o = (1, -1, 0), which is a flex.
p * q is the third intersection of line(p, q) with E (tangent line when
p = q) and p + q = o * (p * q). Every step is exact; the third point is read
off the binary cubic obtained by restricting F to the line, after dividing out
the two known roots.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from core.config import settings
from core.exceptions import (ClassificationError, CurveError,
                             InsufficientSamplesError, SingularCurveError,
                             TowerTooSmallError)
from core.field import FieldElement, FieldTower, polynomial_to_str
from core.polynomial import Polynomial
from core.projective import (ProjMap, ProjPoint, fit_proj_map,
                             general_position_quadruples, proj_order)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurvePoint:
    curve: "HesseCurve"
    point: ProjPoint

    def __add__(self, other: "CurvePoint") -> "CurvePoint":
        return self.curve.add(self, other)

    def __neg__(self) -> "CurvePoint":
        return self.curve.negate(self)

    def __sub__(self, other: "CurvePoint") -> "CurvePoint":
        return self.curve.add(self, self.curve.negate(other))

    def __rmul__(self, n: int) -> "CurvePoint":
        return self.curve.scalar_mul(n, self)

    @property
    def coords(self) -> Tuple[FieldElement, FieldElement, FieldElement]:
        return self.point.coords

    def to_json(self) -> list:
        return self.point.to_json()

    def __str__(self) -> str:
        return str(self.point)


@dataclass(frozen=True)
class EllipticAut:
    """The automorphism q -> translate + τ_E^power(q)."""
    translate: CurvePoint
    power: int

    def to_json(self) -> dict:
        return {"translate": self.translate.to_json(), "power": self.power}


@dataclass(frozen=True)
class TorsionSet:
    n: int
    points: Tuple[CurvePoint, ...]

    def __contains__(self, p: CurvePoint) -> bool:
        return p in self.points

    def __len__(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {"n": self.n, "points": [p.to_json() for p in self.points]}


@dataclass(frozen=True)
class HesseCurve:
    lam: FieldElement

    def __post_init__(self):
        if self.lam ** 3 == 1:
            raise SingularCurveError(f"Hesse curve with λ = {self.lam} is singular (λ^3 = 1)")

    @property
    def tower(self) -> FieldTower:
        return self.lam.tower

    @cached_property
    def form(self) -> Polynomial:
        x, y, z = Polynomial.variables(self.tower, 3)
        return x ** 3 + y ** 3 + z ** 3 - x * y * z * (3 * self.lam)

    def evaluate(self, v: Sequence[FieldElement]) -> FieldElement:
        a, b, c = v
        return a * a * a + b * b * b + c * c * c - 3 * self.lam * a * b * c

    def gradient(self, v: Sequence[FieldElement]) -> List[FieldElement]:
        a, b, c = v
        lam3 = 3 * self.lam
        return [3 * a * a - lam3 * b * c, 3 * b * b - lam3 * a * c, 3 * c * c - lam3 * a * b]

    def contains(self, pt: ProjPoint) -> bool:
        return not self.evaluate(pt.coords)

    def point(self, *coords) -> CurvePoint:
        """A CurvePoint from a ProjPoint or three coordinates; raises unless it lies on E."""
        pt = coords[0] if len(coords) == 1 and isinstance(coords[0], ProjPoint) else ProjPoint.of(self.tower, *coords)
        if not self.contains(pt):
            raise CurveError(f"{pt} is not on the curve with λ = {self.lam}")
        return CurvePoint(self, pt)

    @cached_property
    def origin(self) -> CurvePoint:
        return self.point(1, -1, 0)

    def j_invariant(self) -> FieldElement:
        l3 = self.lam ** 3
        return 27 * l3 * (l3 + 8) ** 3 / (l3 - 1) ** 3

    # Group law

    def _check(self, *points: CurvePoint) -> None:
        for p in points:
            if p.curve != self:
                raise CurveError("points lie on different curves")

    def third_point(self, p: CurvePoint, q: CurvePoint) -> CurvePoint:
        """Third intersection of line(p, q) with E; the tangent line when p == q."""
        self._check(p, q)
        P = p.coords
        if p != q:
            Q = q.coords
            gp = self.gradient(P)
            gq = self.gradient(Q)
            s = sum(g * c for g, c in zip(gq, P))
            t = sum(g * c for g, c in zip(gp, Q))
            return CurvePoint(self, ProjPoint.from_vector([s * a - t * b for a, b in zip(P, Q)]))
        g = self.gradient(P)
        for k in range(3):
            e = [self.tower.zero] * 3
            e[k] = self.tower.one
            d = [g[1] * e[2] - g[2] * e[1], g[2] * e[0] - g[0] * e[2], g[0] * e[1] - g[1] * e[0]]
            if any(d) and ProjPoint.from_vector(d) != p.point:
                break
        fd = self.evaluate(d)
        gd = sum(a * b for a, b in zip(self.gradient(d), P))
        return CurvePoint(self, ProjPoint.from_vector([fd * a - gd * b for a, b in zip(P, d)]))

    def add(self, p: CurvePoint, q: CurvePoint) -> CurvePoint:
        return self.third_point(self.origin, self.third_point(p, q))

    def negate(self, p: CurvePoint) -> CurvePoint:
        self._check(p)
        a, b, c = p.coords
        return CurvePoint(self, ProjPoint.of(self.tower, b, a, c))

    def scalar_mul(self, n: int, p: CurvePoint) -> CurvePoint:
        if n < 0:
            return self.negate(self.scalar_mul(-n, p))
        result = self.origin
        addend = p
        while n:
            if n & 1:
                result = self.add(result, addend)
            n >>= 1
            if n:
                addend = self.add(addend, addend)
        return result

    def point_order(self, p: CurvePoint, bound: Optional[int] = None) -> Optional[int]:
        """Smallest n <= bound with n·p = o, or None."""
        bound = bound or settings.root_of_unity_bound
        q = p
        for n in range(1, bound + 1):
            if q == self.origin:
                return n
            q = self.add(q, p)
        return None

    # Torsion

    @cached_property
    def _two_torsion_roots(self) -> Tuple[List[FieldElement], List[FieldElement]]:
        # p = -p forces a = b; on (1, 1, c) the cubic becomes c^3 - 3λc + 2.
        poly = [self.tower(2), -3 * self.lam, self.tower.zero, self.tower.one]
        roots, residual = self.tower.find_roots(poly, dps=settings.pslq_precision)
        logger.info(f"E[2] on λ = {self.lam}: {len(roots)} of 3 roots found in the tower")
        return roots, residual

    def available_two_torsion(self) -> List[CurvePoint]:
        roots, _ = self._two_torsion_roots
        return [self.point(1, 1, c) for c in roots]

    def flexes(self) -> List[CurvePoint]:
        """E[3]: the nine flexes, which do not depend on λ."""
        w = self.tower.primitive_cube_root()
        units = [self.tower.one, w, w * w]
        zero, one = self.tower.zero, self.tower.one
        points = []
        for u in units:
            points.append(self.point(zero, one, -u))
            points.append(self.point(one, zero, -u))
            points.append(self.point(one, -u, zero))
        return points

    def torsion_points(self, n: int) -> TorsionSet:
        """
        E[n] for n in {1, 2, 3, 6} over the curve's tower.

        Raises:
            TowerTooSmallError: when roots of c^3 - 3λc + 2 are missing
        """
        if n == 1:
            return TorsionSet(1, (self.origin,))
        if n == 3:
            return TorsionSet(3, tuple(self.flexes()))
        if n == 2:
            roots, residual = self._two_torsion_roots
            if len(roots) < 3:
                missing = polynomial_to_str(residual, "c")
                raise TowerTooSmallError(
                    f"E[2] needs the roots of c^3 - 3λc + 2 with λ = {self.lam}; missing roots of {missing}",
                    missing_polynomial=missing)
            return TorsionSet(2, (self.origin,) + tuple(self.point(1, 1, c) for c in roots))
        if n == 6:
            two = self.torsion_points(2).points
            three = self.torsion_points(3).points
            seen: Dict[CurvePoint, None] = {}
            for a in two:
                for b in three:
                    seen.setdefault(self.add(a, b), None)
            return TorsionSet(6, tuple(seen))
        raise CurveError(f"torsion_points supports n in {{1, 2, 3, 6}}, not {n}")

    # Automorphisms fixing o

    def automorphism_class(self) -> str:
        """'generic', 'j0' or 'j1728', checking the fixed forms λ = 0 and (λ-1)^2 = 3."""
        j = self.j_invariant()
        if j == 0:
            if self.lam:
                raise ClassificationError(f"j(E) = 0 but λ = {self.lam}; use the fixed form λ = 0")
            return "j0"
        if j == 1728:
            if (self.lam - 1) ** 2 != 3:
                raise ClassificationError(f"j(E) = 1728 but λ = {self.lam}; use the fixed form λ = 1 + √3")
            return "j1728"
        return "generic"

    @cached_property
    def tau_generator(self) -> ProjMap:
        """Generator τ_E of the automorphisms of E fixing o."""
        kind = self.automorphism_class()
        if kind == "generic":
            return ProjMap.from_rows(self.tower, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        eps = self.tower.primitive_cube_root()
        if kind == "j0":
            return ProjMap.from_rows(self.tower, [[0, 1, 0], [1, 0, 0], [0, 0, eps]])
        e2 = eps * eps
        return ProjMap.from_rows(self.tower, [[e2, eps, 1], [eps, e2, 1], [1, 1, 1]])

    @cached_property
    def tau_order(self) -> int:
        return proj_order(self.tau_generator, 12)

    def tau_power(self, i: int) -> ProjMap:
        return self.tau_generator.power(i % self.tau_order)

    def apply_aut(self, aut: EllipticAut, q: CurvePoint) -> CurvePoint:
        self._check(aut.translate, q)
        moved = q if aut.power % self.tau_order == 0 else CurvePoint(self, self.tau_power(aut.power)(q.point))
        return self.add(aut.translate, moved)

    def aut(self, translate: CurvePoint, power: int = 0) -> EllipticAut:
        self._check(translate)
        return EllipticAut(translate, power % self.tau_order)

    def compose_auts(self, f: EllipticAut, g: EllipticAut) -> EllipticAut:
        """f ∘ g, using τ^i ∘ σ_q = σ_{τ^i(q)} ∘ τ^i."""
        moved = CurvePoint(self, self.tau_power(f.power)(g.translate.point))
        return self.aut(self.add(f.translate, moved), f.power + g.power)

    def inverse_aut(self, f: EllipticAut) -> EllipticAut:
        back = self.tau_power(-f.power)
        return self.aut(CurvePoint(self, back(self.negate(f.translate).point)), -f.power)

    def as_elliptic_aut(self, tau: ProjMap) -> EllipticAut:
        """Write a linear map preserving E as σ_q τ_E^i."""
        image = tau(self.origin.point)
        if not self.contains(image):
            raise CurveError("the map does not send o to a point of E")
        q = CurvePoint(self, image)
        samples = self.sample_points(8)
        for i in range(self.tau_order):
            candidate = self.aut(q, i)
            if all(tau(x.point) == self.apply_aut(candidate, x).point for x in samples):
                return candidate
        raise CurveError("the map does not restrict to an automorphism of E")

    def in_exceptional(self, p: CurvePoint) -> bool:
        """Membership in ℰ = {a^9 = b^9 = c^9} on x^3 + y^3 + z^3 = 0."""
        if self.lam:
            raise CurveError("the exceptional set is only defined for λ = 0")
        a, b, c = (x ** 9 for x in p.coords)
        if not (a == b == c):
            return False
        return self.scalar_mul(6, p) != self.origin

    # Sampling and linear extensions

    def sample_points(self, count: int, seeds: Sequence[CurvePoint] = ()) -> List[CurvePoint]:
        """
        Deterministic exact points of E: the seeds, the flexes and the available
        2-torsion, closed under chords until ``count`` points are reached.
        """
        key = (count, tuple(seeds))
        cache = self.__dict__.setdefault("_sample_cache", {})
        if key in cache:
            return cache[key]
        points: List[CurvePoint] = []
        seen = set()

        def push(pt: CurvePoint) -> None:
            if pt not in seen:
                seen.add(pt)
                points.append(pt)

        for s in seeds:
            self._check(s)
            push(s)
        if self.tower.has_cube_root_of_unity():
            for f in self.flexes():
                push(f)
        else:
            push(self.origin)
        for t in self.available_two_torsion():
            push(t)
        i = 0
        while len(points) < count and i < len(points):
            for j in range(i + 1):
                push(self.third_point(points[i], points[j]))
                if len(points) >= count:
                    break
            i += 1
        points = points[:count]
        logger.debug(f"Sampled {len(points)} points on λ = {self.lam}")
        cache[key] = points
        return points

    def linear_extension(self, aut: EllipticAut, seeds: Sequence[CurvePoint] = ()) -> Optional[ProjMap]:
        """The ProjMap restricting to ``aut`` on E, or None if there is none."""
        key = (aut, tuple(seeds))
        cache = self.__dict__.setdefault("_extension_cache", {})
        if key in cache:
            return cache[key]
        samples = self.sample_points(settings.curve_sample_count, seeds)
        if len(samples) < 10:
            raise InsufficientSamplesError(f"only {len(samples)} exact points available on λ = {self.lam}")
        pairs = [(x.point, self.apply_aut(aut, x).point) for x in samples]
        result = fit_and_verify(pairs)
        cache[key] = result
        return result

    def translation_group(self, seeds: Sequence[CurvePoint] = ()) -> List[ProjMap]:
        """The nine linear maps of T[3], in flex order."""
        return [self.linear_extension(self.aut(q, 0), seeds) for q in self.flexes()]

    def to_json(self) -> dict:
        return {"lambda": self.lam.to_json()}


def fit_and_verify(pairs: Sequence[Tuple[ProjPoint, ProjPoint]]) -> Optional[ProjMap]:
    """Fit a ProjMap on the first general-position quadruple of sources and check every pair."""
    sources = [s for s, _ in pairs]
    for combo in general_position_quadruples(sources):
        fitted = fit_proj_map([pairs[i] for i in combo])
        if fitted is None:
            return None
        if all(fitted(s) == t for s, t in pairs):
            return fitted
        return None
    raise InsufficientSamplesError("no four sample points in general position")
