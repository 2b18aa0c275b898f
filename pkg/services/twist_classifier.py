"""
Twists of geometric algebras A(E, σ) by automorphisms of P^2 preserving E.

Z(E, σ)  τ commutes with σ on E
N(E, σ)  σ τ σ^-1 on E extends to a linear map of P^2
M(E, σ)  (τσ)^i σ^-i extends for every i

Maps on E are handled as RestrictedAut: per component either a symbolic graph
(source parametrization -> image parametrization, compared through 2x2 minors)
or, on smooth cubics, exact sample point pairs from the group law.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.config import settings
from core.exceptions import (ClassificationError, InsufficientSamplesError,
                             SigmaUndeterminedError)
from core.field import root_of_unity_order
from core.polynomial import (Polynomial, Triple, apply_matrix,
                             evaluate_triple, substitute_triple,
                             triple_is_zero, triples_parallel)
from core.projective import ProjMap, ProjPoint
from core.schemas import SCHEMA_VERSION, Certificate
from services.catalog import AlgebraType, AlgebraTypeTag, algebra_catalog
from services.group_desc import GroupDesc, Semidirect, finite_cyclic
from services.hesse_curve import CurvePoint, EllipticAut, HesseCurve, fit_and_verify
from services.quadratic_algebra import GeometricPair

logger = logging.getLogger(__name__)

PointPair = Tuple[ProjPoint, ProjPoint]


class Membership(str, Enum):
    TRUE = "true"
    FALSE = "false"
    TRUE_WITHIN_BOUND = "true-within-bound"


@dataclass(frozen=True)
class MembershipResult:
    membership: Membership
    failing_index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.membership != Membership.FALSE

    def to_json(self) -> dict:
        return {"membership": self.membership.value, "failing_index": self.failing_index}


@dataclass(frozen=True, eq=False)
class GraphPiece:
    """The map on one component: source(v) -> image(v) symbolically, or explicit point pairs."""
    component: int
    source: Optional[Triple] = None
    image: Optional[Triple] = None
    pairs: Tuple[PointPair, ...] = ()

    @property
    def is_symbolic(self) -> bool:
        return self.source is not None

    def point_pairs(self, values: Sequence[Tuple]) -> List[PointPair]:
        if not self.is_symbolic:
            return list(self.pairs)
        out = []
        for v in values:
            s = evaluate_triple(self.source, v)
            t = evaluate_triple(self.image, v)
            if any(s) and any(t):
                out.append((ProjPoint.from_vector(s), ProjPoint.from_vector(t)))
        return out


@dataclass(frozen=True, eq=False)
class RestrictedAut:
    """
    A map E -> E given component-wise, with the ambient ProjMap when the map
    is known to be globally linear.
    """
    pair: GeometricPair
    pieces: Tuple[GraphPiece, ...]
    permutation: Optional[Tuple[int, ...]] = None
    ambient: Optional[ProjMap] = None

    def sample_pairs(self) -> List[PointPair]:
        out: List[PointPair] = []
        for piece in self.pieces:
            values = self.pair.components[piece.component].param_values(settings.param_sample_count * 2) \
                if piece.is_symbolic else ()
            out.extend(piece.point_pairs(values))
        return out

    def map_images(self, symbolic: Callable[[Triple], Triple],
                   pointwise: Callable[[ProjPoint], ProjPoint]) -> "RestrictedAut":
        """Post-compose every piece with a map given both ways."""
        pieces = []
        for piece in self.pieces:
            if piece.is_symbolic:
                pieces.append(GraphPiece(piece.component, piece.source, symbolic(piece.image)))
            else:
                pieces.append(GraphPiece(piece.component, pairs=tuple((s, pointwise(t)) for s, t in piece.pairs)))
        return RestrictedAut(self.pair, tuple(pieces), self.permutation)

    def map_sources(self, symbolic: Callable[[Triple], Triple],
                    pointwise: Callable[[ProjPoint], ProjPoint]) -> "RestrictedAut":
        pieces = []
        for piece in self.pieces:
            if piece.is_symbolic:
                pieces.append(GraphPiece(piece.component, symbolic(piece.source), piece.image))
            else:
                pieces.append(GraphPiece(piece.component, pairs=tuple((pointwise(s), t) for s, t in piece.pairs)))
        return RestrictedAut(self.pair, tuple(pieces), self.permutation)

    def agrees_with(self, other: "RestrictedAut") -> bool:
        """Exact agreement piece by piece; both maps must be built on the same sources."""
        if len(self.pieces) != len(other.pieces):
            return False
        for a, b in zip(self.pieces, other.pieces):
            if a.is_symbolic and b.is_symbolic:
                if triple_is_zero(a.image) or triple_is_zero(b.image) or not triples_parallel(a.image, b.image):
                    return False
            else:
                if [s for s, _ in a.pairs] != [s for s, _ in b.pairs]:
                    return False
                if any(ta != tb for (_, ta), (_, tb) in zip(a.pairs, b.pairs)):
                    return False
        return True

    def to_json(self) -> dict:
        return {"permutation": list(self.permutation) if self.permutation is not None else None,
                "ambient": self.ambient.to_json() if self.ambient is not None else None,
                "pieces": [{"component": p.component, "symbolic": p.is_symbolic} for p in self.pieces]}


@dataclass(eq=False)
class TwistFamilyMember:
    label: str
    tau: Optional[ProjMap]
    pair: GeometricPair
    family: Optional[str] = None

    def to_json(self) -> dict:
        return {"label": self.label, "family": self.family,
                "tau": self.tau.pretty() if self.tau is not None else None,
                "pair": self.pair.describe()}


@dataclass
class OracleRow:
    q: str
    i: int
    z_definitional: bool
    z_criterion: bool
    n_definitional: bool
    n_criterion: bool

    @property
    def agrees(self) -> bool:
        return self.z_definitional == self.z_criterion and self.n_definitional == self.n_criterion


@dataclass
class TwistReport:
    algebra_type: AlgebraType
    z_group: GroupDesc
    m_group: GroupDesc
    n_group: GroupDesc
    sigma_order: Optional[int]
    branch: str
    flags: Dict[str, Optional[bool]]
    twist_family: List[dict] = field(default_factory=list)
    corollary: Optional[dict] = None
    certificate: Certificate = field(default_factory=lambda: Certificate(passed=True))

    def to_json(self, certificates: bool = False) -> dict:
        data = {
            "schema": SCHEMA_VERSION,
            **self.algebra_type.to_json(),
            "z_group": _group_json(self.z_group),
            "m_group": _group_json(self.m_group),
            "n_group": _group_json(self.n_group),
            "sigma_order": self.sigma_order,
            "branch": self.branch,
            "flags": self.flags,
            "twist_family": self.twist_family,
            "verified": self.certificate.passed,
        }
        if self.corollary is not None:
            data["corollary"] = self.corollary
        if certificates:
            data["certificates"] = [c.model_dump() for c in self.certificate.checks]
        return data


def _group_json(group: GroupDesc) -> dict:
    data = {"label": group.label}
    data.update(group.to_json())
    return data


# Symbolic and pointwise σ


def _sigma_triple(pair: GeometricPair, triple: Triple) -> Triple:
    """σ ∘ triple for a parametrization of (part of) a parametrized component."""
    for c in pair.components:
        if c.is_elliptic or not c.form.substitute(triple).is_zero():
            continue
        image = substitute_triple(c.sigma, triple)
        if not triple_is_zero(image):
            return image
    raise SigmaUndeterminedError("σ is not determined along the given parametrization")


class TwistClassifier:
    def __init__(self):
        self._reports: Dict[Tuple, TwistReport] = {}

    # Restricted automorphisms

    def restricts_to_E(self, tau: ProjMap, pair: GeometricPair) -> Optional[RestrictedAut]:
        """
        τ|_E when τ maps E onto E, found by pulling back the component forms.

        Returns:
            The RestrictedAut with its component permutation, or None
        """
        tower = pair.tower
        moved = apply_matrix(tau.matrix, Polynomial.variables(tower, 3))
        if pair.is_whole_plane:
            c = pair.components[0]
            piece = GraphPiece(0, c.parametrization, apply_matrix(tau.matrix, c.parametrization))
            return RestrictedAut(pair, (piece,), (0,), tau)
        permutation = []
        for c in pair.components:
            target = next((j for j, d in enumerate(pair.components)
                           if d.form.substitute(moved).proportional_to(c.form)), None)
            if target is None:
                return None
            permutation.append(target)
        pieces = []
        for i, c in enumerate(pair.components):
            if c.is_elliptic:
                samples = c.sample_points(settings.curve_sample_count)
                pieces.append(GraphPiece(i, pairs=tuple((x, tau(x)) for x in samples)))
            else:
                pieces.append(GraphPiece(i, c.parametrization, apply_matrix(tau.matrix, c.parametrization)))
        return RestrictedAut(pair, tuple(pieces), tuple(permutation), tau)

    def from_elliptic_aut(self, pair: GeometricPair, aut: EllipticAut) -> RestrictedAut:
        """An automorphism σ_q τ_E^i of the elliptic component as a RestrictedAut."""
        c = pair.elliptic_component
        if c is None:
            raise ClassificationError("the pair has no elliptic component")
        samples = c.sample_points(settings.curve_sample_count)
        pairs = tuple((x, c.curve.apply_aut(aut, CurvePoint(c.curve, x)).point) for x in samples)
        return RestrictedAut(pair, (GraphPiece(pair.components.index(c), pairs=pairs),))

    def sigma_power(self, pair: GeometricPair, k: int) -> RestrictedAut:
        """σ^k on E; symbolic on parametrized components for k >= 0."""
        pieces = []
        for i, c in enumerate(pair.components):
            if not c.is_elliptic and k >= 0:
                image = c.parametrization
                for _ in range(k):
                    image = _sigma_triple(pair, image)
                pieces.append(GraphPiece(i, c.parametrization, image))
                continue
            count = settings.curve_sample_count if c.is_elliptic else settings.param_sample_count
            pairs = []
            for x in c.sample_points(count):
                try:
                    pairs.append((x, pair.sigma_power(x, k)))
                except SigmaUndeterminedError:
                    logger.debug(f"σ^{k} undetermined at {x}")
            pieces.append(GraphPiece(i, pairs=tuple(pairs)))
        return RestrictedAut(pair, tuple(pieces))

    def compose_sigma(self, f: RestrictedAut) -> RestrictedAut:
        """σ ∘ f."""
        return f.map_images(lambda t: _sigma_triple(f.pair, t), f.pair.sigma)

    def conjugate_by_sigma(self, f: RestrictedAut) -> RestrictedAut:
        """σ ∘ f ∘ σ^-1, as the graph σ(x) -> σ(f(x))."""
        pair = f.pair
        return self.compose_sigma(f).map_sources(lambda t: _sigma_triple(pair, t), pair.sigma)

    def extends_to_P2(self, f: RestrictedAut, pair: Optional[GeometricPair] = None) -> Optional[ProjMap]:
        """
        The unique ProjMap agreeing with f on E, or None.

        Fitted on four general-position sample points and then checked on all
        samples and, on parametrized components, as a polynomial identity.
        """
        pairs = f.sample_pairs()
        try:
            fitted = fit_and_verify(pairs)
        except InsufficientSamplesError:
            logger.error(f"No four sample points of E in general position among {len(pairs)}")
            raise
        if fitted is None:
            return None
        for piece in f.pieces:
            if piece.is_symbolic and not triples_parallel(apply_matrix(fitted.matrix, piece.source), piece.image):
                return None
        return fitted

    # Z, N, M

    def in_Z(self, tau: ProjMap, pair: GeometricPair) -> bool:
        """σ τ|_E σ^-1 = τ|_E, checked as σ∘τ = τ∘σ on E."""
        f = self.restricts_to_E(tau, pair)
        if f is None:
            return False
        try:
            left = self.compose_sigma(f)
        except SigmaUndeterminedError:
            return False
        right = self.sigma_power(pair, 1).map_images(lambda t: apply_matrix(tau.matrix, t), tau)
        return left.agrees_with(right)

    def in_N(self, tau: ProjMap, pair: GeometricPair) -> bool:
        f = self.restricts_to_E(tau, pair)
        if f is None:
            return False
        try:
            conjugate = self.conjugate_by_sigma(f)
        except SigmaUndeterminedError:
            return False
        return self.extends_to_P2(conjugate, pair) is not None

    def in_M(self, tau: ProjMap, pair: GeometricPair, bound: Optional[int] = None) -> MembershipResult:
        """
        Exact for catalog pairs, via the closed-form M(E, σ) of classify.
        Otherwise (τσ)^i σ^-i is tested for 0 < |i| <= bound on exact samples.
        """
        if self.restricts_to_E(tau, pair) is None:
            return MembershipResult(Membership.FALSE)
        if isinstance(pair.algebra_type, AlgebraType):
            report = self.classify(pair.algebra_type)
            return MembershipResult(Membership.TRUE if report.m_group.contains(tau) else Membership.FALSE)
        bound = bound or settings.m_bound
        samples = [x for _, x in pair.sample_points()]

        def twisted(x: ProjPoint, k: int) -> ProjPoint:
            for _ in range(k):
                x = tau(pair.sigma(x))
            return x

        for k in range(1, bound + 1):
            forward, backward = [], []
            for x in samples:
                try:
                    forward.append((pair.sigma_power(x, k), twisted(x, k)))
                    backward.append((x, pair.sigma_power(twisted(x, k), -k)))
                except SigmaUndeterminedError:
                    continue
            for index, pairs in ((k, forward), (-k, backward)):
                if fit_and_verify(pairs) is None:
                    logger.info(f"(τσ)^i σ^-i does not extend at i = {index}")
                    return MembershipResult(Membership.FALSE, index)
        return MembershipResult(Membership.TRUE_WITHIN_BOUND)

    # Closed forms

    def sigma_order(self, t: AlgebraType) -> Optional[int]:
        """Order of σ, None when infinite (or beyond the search bound)."""
        if t.tag == AlgebraTypeTag.P:
            return 1
        if t.tag.has_alpha:
            return root_of_unity_order(t.alpha, settings.root_of_unity_bound)
        if t.tag == AlgebraTypeTag.EC:
            curve = t.curve
            return curve.point_order(curve.point(t.point), settings.root_of_unity_bound)
        return None

    def _standard_closed_form(self, t: AlgebraType, z_e: GroupDesc,
                              g_e: GroupDesc) -> Tuple[GroupDesc, GroupDesc, str]:
        if t.tag == AlgebraTypeTag.P:
            return z_e, z_e, "whole plane"
        if t.tag in (AlgebraTypeTag.T, AlgebraTypeTag.T_PRIME, AlgebraTypeTag.CC):
            return z_e, z_e, "G(E) meets N(E,σ) trivially"
        aut = Semidirect(z_e, g_e, label=f"Aut(P2↓E) = ({z_e.label}) ⋊ {g_e.label}")
        order = root_of_unity_order(t.alpha, settings.root_of_unity_bound)
        if order is not None and 2 % order == 0:
            return aut, aut, "sigma^2 = id"
        if order is not None and 6 % order == 0:
            return z_e, aut, "sigma^6 = id"
        return z_e, z_e, "sigma^6 != id"

    def _elliptic_closed_form(self, t: AlgebraType, pair: GeometricPair,
                              t3: GroupDesc) -> Tuple[GroupDesc, GroupDesc, str, bool]:
        curve = t.curve
        p = curve.point(t.point)
        kind = curve.automorphism_class()
        order = curve.tau_order

        def extended(k: int) -> GroupDesc:
            if k == 1:
                return Semidirect(t3, finite_cyclic(curve.tau_generator, "<τ_E>"), label="Aut(P2↓E) = T[3] ⋊ <τ_E>")
            return Semidirect(t3, finite_cyclic(curve.tau_power(k), f"<τ_E^{k}>"), label=f"T[3] ⋊ <τ_E^{k}>")

        in2 = 2 * p == curve.origin
        in6 = 6 * p == curve.origin
        exceptional = False
        if kind == "generic":
            z = extended(1) if in2 else t3
            m = extended(1) if in6 else t3
            branch = "j generic, " + ("p in E[2]" if in2 else "p in E[6]" if in6 else "p not in E[6]")
        elif kind == "j0":
            exceptional = curve.in_exceptional(p)
            z = extended(3) if in2 else t3
            m = extended(2) if exceptional else extended(3) if in6 else t3
            branch = "j = 0, " + ("p in E[2]" if in2 else "p exceptional" if exceptional
                                  else "p in E[6]" if in6 else "p not in E[6]")
        else:
            h = curve.point(1, 1, curve.lam)
            if 2 * h != curve.origin:
                raise ClassificationError(f"(1, 1, λ) is not 2-torsion on λ = {curve.lam}")
            in_f = p in self.f_set(curve)
            z = extended(1) if p == h else extended(2) if in2 else t3
            m = extended(1) if in_f else extended(2) if in6 else t3
            branch = "j = 1728, " + ("p = (1,1,λ)" if p == h else "p in F" if in_f else
                                     "p in E[2]" if in2 else "p in E[6]" if in6 else "p not in E[6]")
        logger.info(f"Elliptic branch for p = {p} on λ = {curve.lam}: {branch} (|τ_E| = {order})")
        return z, m, branch, exceptional

    @staticmethod
    def f_set(curve: HesseCurve) -> List[CurvePoint]:
        """ℱ = <(1,1,λ)> ⊕ E[3], the 18 points used for j = 1728."""
        h = curve.point(1, 1, curve.lam)
        return [s for s in curve.flexes()] + [curve.add(h, s) for s in curve.flexes()]

    def classify(self, t: AlgebraType, seed: Optional[int] = None) -> TwistReport:
        """
        Z(E,σ), M(E,σ), N(E,σ) from the closed-form tables, with every finite
        generator and three samples of every family re-verified.

        N(E,σ) is reported as M(E,σ): for every catalog type the closed forms
        give M = N, and the certificate checks each generator and family sample
        of M against the definition of N with ``in_N``.

        Raises:
            ClassificationError: for EC with j in {0, 1728} off the fixed forms
        """
        seed = settings.default_seed if seed is None else seed
        key = (t.key(), seed)
        if key in self._reports:
            return self._reports[key]
        relations, pair = algebra_catalog.standard_algebra(t)
        z_e, g_e = algebra_catalog.table2_groups(t)
        exceptional = False
        if t.tag == AlgebraTypeTag.EC:
            z, m, branch, exceptional = self._elliptic_closed_form(t, pair, z_e)
        else:
            z, m, branch = self._standard_closed_form(t, z_e, g_e)
        z_equals_m = z == m
        flags = {
            "z_equals_m": z_equals_m,
            "m_equals_n": True,
            "twist_alg_equals_twist": None if exceptional else z_equals_m,
            "exceptional": exceptional,
        }
        report = TwistReport(t, z, m, m, self.sigma_order(t), branch, flags)
        report.twist_family = self._family_description(m)
        self._reports[key] = report
        self._certify(report, pair, g_e, random.Random(seed))
        if t.tag == AlgebraTypeTag.EC and report.sigma_order == 6 and not exceptional:
            report.corollary = self._corollary(report, pair, seed)
        logger.info(f"Classified {t.tag.value} {t.params_json()}: Z = {z.label}, M = {m.label}, "
                    f"verified = {report.certificate.passed}")
        return report

    def _family_description(self, m: GroupDesc) -> List[dict]:
        described = [{"generator": g.pretty()} for g in m.generators()]
        described += [{"family": fam.label} for fam in m.families()]
        return described or [{"generator": "identity"}]

    def _certify(self, report: TwistReport, pair: GeometricPair, g_e: GroupDesc, rng: random.Random) -> None:
        cert = report.certificate
        tower = pair.tower
        for g in report.z_group.generators():
            cert.add("Z generator in Z(E,σ)", self.in_Z(g, pair), str(g.pretty()))
        for fam in report.z_group.families():
            for _ in range(3):
                tau = fam.sample(tower, rng)
                cert.add(f"Z family {fam.label} sample in Z(E,σ)", self.in_Z(tau, pair), str(tau.pretty()))
        for g in report.m_group.generators():
            cert.add("M generator in N(E,σ)", self.in_N(g, pair), str(g.pretty()))
        for fam in report.m_group.families():
            for _ in range(3):
                tau = fam.sample(tower, rng)
                cert.add(f"M family {fam.label} sample in N(E,σ)", self.in_N(tau, pair), str(tau.pretty()))
        tag = report.algebra_type.tag
        if tag in (AlgebraTypeTag.T, AlgebraTypeTag.T_PRIME, AlgebraTypeTag.CC):
            for _ in range(3):
                tau = g_e.sample(tower, rng)
                if tau.is_identity():
                    continue
                cert.add("non-identity G(E) element outside N(E,σ)", not self.in_N(tau, pair), str(tau.pretty()))
        if tag == AlgebraTypeTag.EC:
            curve = report.algebra_type.curve
            p = curve.point(report.algebra_type.point)
            for i in range(curve.tau_order):
                d = p - CurvePoint(curve, curve.tau_power(i)(p.point))
                power = curve.tau_power(i)
                cert.add(f"Z closed form matches p - τ^{i}(p) = o", report.z_group.contains(power) == (d == curve.origin))
                cert.add(f"M closed form matches p - τ^{i}(p) in E[3]",
                         report.m_group.contains(power) == (3 * d == curve.origin))
        if not cert.passed:
            logger.warning(f"Verification failed for {report.algebra_type.tag.value}: "
                           f"{[c.check for c in cert.checks if not c.passed]}")

    def _corollary(self, report: TwistReport, pair: GeometricPair, seed: int) -> dict:
        """S = A(E, σ^3) with (σ^3)^2 = id, and a τ in Z(E,σ_3p) outside Z(E,σ_p)."""
        t = report.algebra_type
        curve = t.curve
        p3 = 3 * curve.point(t.point)
        t3 = AlgebraType(AlgebraTypeTag.EC, t.tower, point=p3.point)
        report3 = self.classify(t3, seed)
        _, pair3 = algebra_catalog.standard_algebra(t3)
        witness = None
        for i in range(1, curve.tau_order):
            power = curve.tau_power(i)
            if report3.z_group.contains(power) and not report.z_group.contains(power):
                witness = power
                break
        section = {
            "p3": str(p3),
            "sigma3_squared_is_id": 2 * p3 == curve.origin,
            "z_group": report3.z_group.label,
            "m_group": report3.m_group.label,
            "z_equals_m": report3.flags["z_equals_m"],
            "twist_equals_twist_alg_of_S": report3.flags["z_equals_m"] and report.m_group == report3.m_group,
            "witness": witness.pretty() if witness is not None else None,
        }
        if witness is not None:
            section["witness_in_Z_sigma_3p"] = self.in_Z(witness, pair3)
            section["witness_in_Z_sigma_p"] = self.in_Z(witness, pair)
        return section

    # Twist families and the torsion oracle

    def twist_family(self, t: AlgebraType, seed: Optional[int] = None) -> List[TwistFamilyMember]:
        """
        The pairs (E, τ|_E σ) for the generators τ of M(E, σ); each continuous
        family is emitted with three sampled members.
        """
        report = self.classify(t, seed)
        _, pair = algebra_catalog.standard_algebra(t)
        rng = random.Random(settings.default_seed if seed is None else seed)
        members = [TwistFamilyMember("generator", g, pair.compose_linear(g)) for g in report.m_group.generators()]
        for fam in report.m_group.families():
            for _ in range(3):
                tau = fam.sample(t.tower, rng)
                members.append(TwistFamilyMember("family sample", tau, pair.compose_linear(tau), fam.label))
        return members or [TwistFamilyMember("identity", None, pair)]

    def brute_force_MN_oracle(self, pair: GeometricPair, window: Optional[Sequence[int]] = None) -> List[OracleRow]:
        """
        Z and N membership of σ_q τ_E^i (q ∈ E[3]) by the definitions and by
        the torsion criteria p - τ_E^i(p) = o and p - τ_E^i(p) ∈ E[3].

        Raises:
            ClassificationError: when σ is not a translation σ_p
            TowerTooSmallError: when E[3] is not defined over the tower
        """
        c = pair.elliptic_component
        if c is None or c.post_map is not None or c.elliptic_sigma.power != 0:
            raise ClassificationError("the oracle needs a pair (E, σ_p) with σ_p a translation")
        curve = c.curve
        p = c.elliptic_sigma.translate
        translations = curve.translation_group((p,))
        window = range(curve.tau_order) if window is None else window
        rows = []
        for q, translate in zip(curve.flexes(), translations):
            for i in window:
                tau = translate @ curve.tau_power(i)
                d = p - CurvePoint(curve, curve.tau_power(i)(p.point))
                rows.append(OracleRow(str(q), i, self.in_Z(tau, pair), d == curve.origin,
                                      self.in_N(tau, pair), 3 * d == curve.origin))
        disagreements = sum(1 for r in rows if not r.agrees)
        logger.info(f"Oracle over {len(rows)} candidates: {disagreements} disagreements")
        return rows


twist_classifier = TwistClassifier()
