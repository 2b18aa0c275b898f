"""
Symbolic descriptions of subgroups of PGL_3 with decidable membership.

Families are recognized by pattern after normalizing the matrix; finite
groups keep explicit generator ProjMaps and enumerate their elements.
"""

import logging
import random
from abc import ABC, abstractmethod
from typing import List, Optional, Sequence

from core.field import FieldElement, FieldTower
from core.projective import Matrix3, ProjMap

logger = logging.getLogger(__name__)

_SAMPLE_VALUES = (2, 3, -1, -2, 5, 1, 7, -3)


def _rational(rng: random.Random, nonzero: bool = True) -> int:
    values = [v for v in _SAMPLE_VALUES if v or not nonzero]
    return rng.choice(values)


def _entries(tau: ProjMap) -> List[List[FieldElement]]:
    return [list(r) for r in tau.matrix.rows]


class GroupDesc(ABC):
    """A subgroup of PGL_3 described symbolically."""

    label: str = ""

    @abstractmethod
    def contains(self, tau: ProjMap) -> bool:
        ...

    def generators(self) -> List[ProjMap]:
        """Explicit generators of the finite part (families have none)."""
        return []

    def families(self) -> List["GroupDesc"]:
        """Continuous factors, each sampled by ``sample``."""
        return []

    def is_finite(self) -> bool:
        return not self.families()

    def elements(self) -> List[ProjMap]:
        raise NotImplementedError(f"{self.label} is not finite")

    def sample(self, tower: FieldTower, rng: random.Random) -> ProjMap:
        elements = self.elements()
        return elements[rng.randrange(len(elements))]

    @abstractmethod
    def to_json(self) -> dict:
        ...

    def signature(self) -> dict:
        return self.to_json()

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupDesc) and self.signature() == other.signature()

    def __hash__(self) -> int:
        return hash(self.label)

    def __str__(self) -> str:
        return self.label


class Trivial(GroupDesc):
    label = "1"

    def __init__(self, tower: FieldTower):
        self.tower = tower

    def contains(self, tau: ProjMap) -> bool:
        return tau.is_identity()

    def elements(self) -> List[ProjMap]:
        return [ProjMap.identity(self.tower)]

    def to_json(self) -> dict:
        return {"kind": "Trivial"}


class FullPGL3(GroupDesc):
    label = "PGL3"

    def contains(self, tau: ProjMap) -> bool:
        return True

    def families(self) -> List[GroupDesc]:
        return [self]

    def sample(self, tower: FieldTower, rng: random.Random) -> ProjMap:
        while True:
            m = Matrix3.of(tower, [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
            if m.det():
                return ProjMap.of(m)

    def to_json(self) -> dict:
        return {"kind": "FullPGL3"}


class DiagTorus2(GroupDesc):
    """diag(1, e, i) with e i != 0."""
    label = "diag(1,e,i)"

    def contains(self, tau: ProjMap) -> bool:
        m = _entries(tau)
        return all(not m[i][j] for i in range(3) for j in range(3) if i != j)

    def families(self) -> List[GroupDesc]:
        return [self]

    def sample(self, tower: FieldTower, rng: random.Random) -> ProjMap:
        return ProjMap.of(Matrix3.diag(tower, 1, _rational(rng), _rational(rng)))

    def to_json(self) -> dict:
        return {"kind": "DiagTorus2"}


class DiagPowerFamily(GroupDesc):
    """
    diag(1, e^k1, e^k2) for e != 0, with k1 in {0, 1}.

    Covers diag(1, e, e^-1), diag(1, 1, i), diag(1, e, e^2) and diag(1, e, e^-2).
    """

    def __init__(self, k1: int, k2: int, label: Optional[str] = None):
        if k1 not in (0, 1):
            raise ValueError("the first exponent must be 0 or 1")
        self.k1 = k1
        self.k2 = k2
        self.label = label or f"diag(1,e^{k1},e^{k2})"

    def contains(self, tau: ProjMap) -> bool:
        m = _entries(tau)
        if any(m[i][j] for i in range(3) for j in range(3) if i != j):
            return False
        if self.k1 == 0:
            if m[1][1] != 1:
                return False
            return self.k2 != 0 or m[2][2] == 1
        e = m[1][1]
        return m[2][2] == e ** self.k2

    def families(self) -> List[GroupDesc]:
        return [self]

    def sample(self, tower: FieldTower, rng: random.Random) -> ProjMap:
        e = tower(_rational(rng))
        return ProjMap.of(Matrix3.diag(tower, 1, e ** self.k1, e ** self.k2))

    def to_json(self) -> dict:
        return {"kind": "DiagPower", "exponents": [0, self.k1, self.k2]}


def diag_torus1() -> DiagPowerFamily:
    return DiagPowerFamily(1, -1, label="diag(1,e,e^-1)")


class TypeTFamily(GroupDesc):
    """[[1,0,0],[0,e,0],[g,h,e^2]] with e^3 = 1."""
    label = "[[1,0,0],[0,e,0],[g,h,e^2]]"

    def contains(self, tau: ProjMap) -> bool:
        m = _entries(tau)
        if m[0][0] != 1 or m[0][1] or m[0][2] or m[1][0] or m[1][2]:
            return False
        e = m[1][1]
        return e ** 3 == 1 and m[2][2] == e * e

    def families(self) -> List[GroupDesc]:
        return [self]

    def sample(self, tower: FieldTower, rng: random.Random) -> ProjMap:
        w = tower.primitive_cube_root()
        e = [tower.one, w, w * w][rng.randrange(3)]
        g = _rational(rng, nonzero=False)
        h = _rational(rng, nonzero=False)
        return ProjMap.from_rows(tower, [[1, 0, 0], [0, e, 0], [g, h, e * e]])

    def to_json(self) -> dict:
        return {"kind": "TypeTFamily"}


class UnipotentFamily(GroupDesc):
    """[[1,0,0],[d,1,0],[d^2,2d,1]], the automorphisms of the conic y^2 = xz fixing its tangent at (0,0,1)."""
    label = "[[1,0,0],[d,1,0],[d^2,2d,1]]"

    def contains(self, tau: ProjMap) -> bool:
        m = _entries(tau)
        if m[0] != [1, 0, 0] or m[1][1] != 1 or m[1][2] or m[2][2] != 1:
            return False
        d = m[1][0]
        return m[2][0] == d * d and m[2][1] == 2 * d

    def families(self) -> List[GroupDesc]:
        return [self]

    def sample(self, tower: FieldTower, rng: random.Random) -> ProjMap:
        d = _rational(rng)
        return ProjMap.from_rows(tower, [[1, 0, 0], [d, 1, 0], [d * d, 2 * d, 1]])

    def to_json(self) -> dict:
        return {"kind": "Unipotent"}


class FiniteGroup(GroupDesc):
    """Subgroup generated by explicit ProjMaps; elements enumerated by closure."""

    MAX_ORDER = 216

    def __init__(self, gens: Sequence[ProjMap], label: str):
        if not gens:
            raise ValueError("a finite group needs at least one generator")
        self.gens = list(gens)
        self.label = label
        self._elements: Optional[List[ProjMap]] = None

    def generators(self) -> List[ProjMap]:
        return list(self.gens)

    def elements(self) -> List[ProjMap]:
        if self._elements is None:
            identity = ProjMap.identity(self.gens[0].tower)
            found = [identity]
            seen = {identity}
            frontier = [identity]
            while frontier:
                nxt = []
                for a in frontier:
                    for g in self.gens:
                        b = g @ a
                        if b not in seen:
                            seen.add(b)
                            found.append(b)
                            nxt.append(b)
                if len(found) > self.MAX_ORDER:
                    raise ValueError(f"{self.label} has more than {self.MAX_ORDER} elements")
                frontier = nxt
            self._elements = found
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def contains(self, tau: ProjMap) -> bool:
        return tau in set(self.elements())

    def to_json(self) -> dict:
        return {"kind": "Finite", "label": self.label,
                "generators": [g.to_json() for g in self.gens], "order": self.order()}

    def signature(self) -> dict:
        # Generator sets may differ while the groups agree.
        return {"kind": "Finite", "elements": sorted(str(e.to_json()) for e in self.elements())}


def finite_cyclic(generator: ProjMap, label: str) -> FiniteGroup:
    return FiniteGroup([generator], label)


class TranslationTorsion(FiniteGroup):
    """T[3]: the nine translations by 3-torsion points, as linear maps."""

    def __init__(self, maps: Sequence[ProjMap]):
        super().__init__(maps, "T[3]")

    def elements(self) -> List[ProjMap]:
        return self.gens

    def to_json(self) -> dict:
        return {"kind": "TranslationTorsion", "order": len(self.gens)}


class Semidirect(GroupDesc):
    """N ⋊ H with H finite: τ ∈ N ⋊ H iff τ h^-1 ∈ N for some h ∈ H."""

    def __init__(self, normal: GroupDesc, acting: GroupDesc, label: Optional[str] = None):
        self.normal = normal
        self.acting = acting
        self.label = label or f"{normal.label} ⋊ {acting.label}"

    def contains(self, tau: ProjMap) -> bool:
        if isinstance(self.acting, Trivial):
            return self.normal.contains(tau)
        return any(self.normal.contains(tau @ h.inverse()) for h in self.acting.elements())

    def generators(self) -> List[ProjMap]:
        return self.normal.generators() + self.acting.generators()

    def families(self) -> List[GroupDesc]:
        return self.normal.families() + self.acting.families()

    def elements(self) -> List[ProjMap]:
        found = []
        seen = set()
        for n in self.normal.elements():
            for h in self.acting.elements():
                e = n @ h
                if e not in seen:
                    seen.add(e)
                    found.append(e)
        return found

    def sample(self, tower: FieldTower, rng: random.Random) -> ProjMap:
        n = self.normal.sample(tower, rng)
        if isinstance(self.acting, Trivial):
            return n
        return n @ self.acting.sample(tower, rng)

    def to_json(self) -> dict:
        return {"kind": "Semidirect", "normal": self.normal.to_json(), "acting": self.acting.to_json()}

    def signature(self) -> dict:
        if self.is_finite():
            return {"kind": "Finite", "elements": sorted(str(e.to_json()) for e in self.elements())}
        return {"kind": "Semidirect", "normal": self.normal.signature(), "acting": self.acting.signature()}

