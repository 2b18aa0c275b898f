"""
Graded truncations A_0, ..., A_d of A = T(V)/(R) and twisting systems on them.

Degree-n words in x, y, z are indexed in base 3, first letter most
significant. I_n = Σ_i V^i ⊗ R ⊗ V^(n-2-i) is kept as a sparse echelon basis;
the words that are not pivots form the normal-word basis of A_n, and every
tensor reduces to a unique combination of them.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from core.config import settings
from core.exceptions import RelationError
from core.field import FieldElement, FieldTower
from core.linalg import SparseEchelon, identity_matrix, mat_vec
from core.projective import Matrix3
from services.quadratic_algebra import LETTERS, RelationSpace

logger = logging.getLogger(__name__)

Matrix = List[List[FieldElement]]


class GradedTruncation:
    def __init__(self, relations: RelationSpace, degree: int):
        if degree < 0 or degree > settings.max_truncation_degree:
            raise RelationError(f"truncation degree must lie in 0..{settings.max_truncation_degree}, got {degree}")
        self.relations = relations
        self.degree = degree
        self.tower: FieldTower = relations.tower
        self._relation_vectors = [
            {3 * i + j: m[i, j] for i in range(3) for j in range(3) if m[i, j]} for m in relations.basis
        ]
        self._ideals: Dict[int, SparseEchelon] = {}
        self._normal: Dict[int, List[int]] = {}
        self._position: Dict[int, Dict[int, int]] = {}
        for n in range(degree + 1):
            self._build(n)

    def _build(self, n: int) -> None:
        ideal = SparseEchelon()
        for i in range(max(n - 1, 0)):
            left, right = 3 ** i, 3 ** (n - 2 - i)
            shift = 3 ** (n - i)
            for rel in self._relation_vectors:
                for u in range(left):
                    for w in range(right):
                        ideal.add({u * shift + r * right + w: c for r, c in rel.items()})
        pivots = set(ideal.pivots)
        normal = [w for w in range(3 ** n) if w not in pivots]
        self._ideals[n] = ideal
        self._normal[n] = normal
        self._position[n] = {w: k for k, w in enumerate(normal)}
        logger.debug(f"A_{n}: dim {len(normal)} (relations span {len(ideal)})")

    def dims(self) -> List[int]:
        return [len(self._normal[n]) for n in range(self.degree + 1)]

    def dim(self, n: int) -> int:
        return len(self._normal[n])

    def normal_words(self, n: int) -> List[str]:
        return [word_string(w, n) for w in self._normal[n]]

    def reduce(self, n: int, vector: Dict[int, FieldElement]) -> List[FieldElement]:
        """Coordinates of a degree-n tensor on the normal-word basis of A_n."""
        remainder = self._ideals[n].reduce(vector)
        coords = [self.tower.zero] * self.dim(n)
        for w, c in remainder.items():
            coords[self._position[n][w]] = c
        return coords

    def multiply(self, m: int, a: Sequence[FieldElement], l: int, b: Sequence[FieldElement]) -> List[FieldElement]:
        """Product of a ∈ A_m and b ∈ A_l in A_(m+l), all in normal-word coordinates."""
        if m + l > self.degree:
            raise RelationError(f"product lands in degree {m + l} beyond the truncation degree {self.degree}")
        shift = 3 ** l
        vector: Dict[int, FieldElement] = {}
        for wa, ca in zip(self._normal[m], a):
            if not ca:
                continue
            for wb, cb in zip(self._normal[l], b):
                if not cb:
                    continue
                key = wa * shift + wb
                vector[key] = vector[key] + ca * cb if key in vector else ca * cb
        return self.reduce(m + l, vector)

    def induced_map(self, phi: Matrix3, n: int) -> Matrix:
        """
        Matrix on A_n of the map sending a normal word x_{i1}...x_{in} to
        φ(x_{i1})...φ(x_{in}), with φ(x_j) = Σ_k φ[k, j] x_k.
        """
        columns = []
        for w in self._normal[n]:
            letters = word_letters(w, n)
            expansion: Dict[int, FieldElement] = {0: self.tower.one}
            for letter in letters:
                nxt: Dict[int, FieldElement] = {}
                for key, c in expansion.items():
                    for k in range(3):
                        coeff = phi[k, letter]
                        if not coeff:
                            continue
                        new_key = key * 3 + k
                        val = c * coeff
                        nxt[new_key] = nxt[new_key] + val if new_key in nxt else val
                expansion = nxt
            columns.append(self.reduce(n, expansion))
        size = self.dim(n)
        return [[columns[j][i] for j in range(size)] for i in range(size)]


def word_letters(index: int, n: int) -> List[int]:
    letters = []
    for _ in range(n):
        letters.append(index % 3)
        index //= 3
    return letters[::-1]


def word_string(index: int, n: int) -> str:
    return "".join(LETTERS[k] for k in word_letters(index, n)) or "1"


def truncation_dims(relations: RelationSpace, d: int) -> List[int]:
    """(dim A_0, ..., dim A_d)."""
    return GradedTruncation(relations, d).dims()


@dataclass
class TwistingSystem:
    """θ_n given by its matrices on A_0, ..., A_d: ``maps[n][j]`` acts on A_j."""
    maps: Dict[int, List[Matrix]]


@dataclass
class TwistingCheck:
    passed: bool
    witness: Optional[dict] = None
    checked: int = 0

    def to_json(self) -> dict:
        return {"passed": self.passed, "witness": self.witness, "checked": self.checked}


def algebraic_twisting_system(truncation: GradedTruncation, phi: Matrix3, window: int) -> TwistingSystem:
    """θ_n = φ^n for 0 <= n < window + d, so that every θ_(n+m) in the window exists."""
    tower = truncation.tower
    maps: Dict[int, List[Matrix]] = {}
    power = Matrix3.identity(tower)
    for n in range(window + truncation.degree):
        maps[n] = [truncation.induced_map(power, j) for j in range(truncation.degree + 1)]
        power = power @ phi
    return TwistingSystem(maps)


def verify_twisting_system(truncation: GradedTruncation, system: TwistingSystem,
                           window: Optional[Sequence[int]] = None,
                           require_normalized: bool = False) -> TwistingCheck:
    """
    Check θ_n(a θ_m(b)) = θ_n(a) θ_(n+m)(b) on all normal-word pairs with
    deg a + deg b <= d, for every n in the window whose θ_(n+m) is given.

    Returns:
        TwistingCheck with the first failing (n, a, b) as witness
    """
    tower = truncation.tower
    d = truncation.degree
    window = sorted(system.maps) if window is None else list(window)
    checked = 0
    if require_normalized and 0 in system.maps:
        for j, matrix in enumerate(system.maps[0]):
            if matrix != identity_matrix(truncation.dim(j), tower.zero, tower.one):
                return TwistingCheck(False, {"reason": "theta_0 is not the identity", "degree": j}, checked)
    for n in window:
        theta_n = system.maps.get(n)
        if theta_n is None:
            continue
        for m in range(d + 1):
            theta_m = system.maps.get(m)
            theta_nm = system.maps.get(n + m)
            if theta_m is None or theta_nm is None:
                continue
            for l in range(d + 1 - m):
                for ia in range(truncation.dim(m)):
                    a = _unit(tower, truncation.dim(m), ia)
                    theta_n_a = mat_vec(theta_n[m], a)
                    for ib in range(truncation.dim(l)):
                        b = _unit(tower, truncation.dim(l), ib)
                        lhs = mat_vec(theta_n[m + l], truncation.multiply(m, a, l, mat_vec(theta_m[l], b)))
                        rhs = truncation.multiply(m, theta_n_a, l, mat_vec(theta_nm[l], b))
                        checked += 1
                        if lhs != rhs:
                            witness = {"n": n, "m": m, "a": truncation.normal_words(m)[ia],
                                       "b": truncation.normal_words(l)[ib]}
                            logger.info(f"Twisting identity fails at {witness}")
                            return TwistingCheck(False, witness, checked)
    return TwistingCheck(True, None, checked)


def _unit(tower: FieldTower, size: int, index: int) -> List[FieldElement]:
    v = [tower.zero] * size
    v[index] = tower.one
    return v


def scale_map(system: TwistingSystem, n: int, j: int, factor) -> TwistingSystem:
    """A copy of the system with θ_n on A_j multiplied by a scalar."""
    maps = {k: [[list(r) for r in mat] for mat in v] for k, v in system.maps.items()}
    maps[n][j] = [[x * factor for x in row] for row in maps[n][j]]
    return TwistingSystem(maps)
