"""
Projective linear algebra over a FieldTower: 3x3 matrices, points of P^2 and
projective automorphisms. Matrices act on column vectors, so a ProjMap sends
the point (a, b, c) to M · (a, b, c)^t.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from core.exceptions import ProjectiveError
from core.field import FieldElement, FieldTower

logger = logging.getLogger(__name__)


def det3(m: Sequence[Sequence]):
    """Determinant of a 3x3 array over any commutative ring."""
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def adjugate3(m: Sequence[Sequence]) -> List[list]:
    """Adjugate (transposed cofactor matrix) of a 3x3 array over any commutative ring."""
    def cofactor(i: int, j: int):
        rows = [r for r in range(3) if r != i]
        cols = [c for c in range(3) if c != j]
        minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
        return minor if (i + j) % 2 == 0 else -minor
    return [[cofactor(j, i) for j in range(3)] for i in range(3)]


def cross3(u: Sequence, v: Sequence) -> list:
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


@dataclass(frozen=True)
class Matrix3:
    rows: Tuple[Tuple[FieldElement, FieldElement, FieldElement], ...]

    @classmethod
    def of(cls, tower: FieldTower, rows: Sequence[Sequence]) -> "Matrix3":
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ProjectiveError("a 3x3 matrix needs three rows of three entries")
        return cls(tuple(tuple(tower(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, tower: FieldTower) -> "Matrix3":
        return cls.of(tower, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def zero(cls, tower: FieldTower) -> "Matrix3":
        return cls.of(tower, [[0] * 3] * 3)

    @classmethod
    def diag(cls, tower: FieldTower, a, b, c) -> "Matrix3":
        return cls.of(tower, [[a, 0, 0], [0, b, 0], [0, 0, c]])

    @property
    def tower(self) -> FieldTower:
        return self.rows[0][0].tower

    def __getitem__(self, ij: Tuple[int, int]) -> FieldElement:
        return self.rows[ij[0]][ij[1]]

    def entries(self) -> List[FieldElement]:
        return [x for r in self.rows for x in r]

    def __add__(self, other: "Matrix3") -> "Matrix3":
        return Matrix3(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c) -> "Matrix3":
        return Matrix3(tuple(tuple(x * c for x in r) for r in self.rows))

    def __matmul__(self, other: "Matrix3") -> "Matrix3":
        cols = list(zip(*other.rows))
        return Matrix3(tuple(tuple(r[0] * c[0] + r[1] * c[1] + r[2] * c[2] for c in cols) for r in self.rows))

    def apply(self, v: Sequence) -> list:
        return [r[0] * v[0] + r[1] * v[1] + r[2] * v[2] for r in self.rows]

    def transpose(self) -> "Matrix3":
        return Matrix3(tuple(zip(*self.rows)))

    def det(self) -> FieldElement:
        return det3(self.rows)

    def adjugate(self) -> "Matrix3":
        return Matrix3(tuple(tuple(r) for r in adjugate3(self.rows)))

    def inverse(self) -> "Matrix3":
        d = self.det()
        if not d:
            raise ProjectiveError("matrix is singular")
        return self.adjugate().scale(d.inverse())

    def is_zero(self) -> bool:
        return not any(self.entries())

    def columns(self) -> List[List[FieldElement]]:
        return [list(c) for c in zip(*self.rows)]

    def to_json(self) -> list:
        return [[x.to_json() for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, tower: FieldTower, data) -> "Matrix3":
        return cls.of(tower, [[tower.element_from_json(x) for x in r] for r in data])

    def pretty(self) -> List[List[str]]:
        return [[str(x) for x in r] for r in self.rows]


def _normalize(values: Sequence[FieldElement]) -> Tuple[FieldElement, ...]:
    for v in values:
        if v:
            inv = v.inverse()
            return tuple(x * inv for x in values)
    raise ProjectiveError("cannot normalize the zero vector")


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^2 normalized so the first nonzero coordinate is 1."""
    coords: Tuple[FieldElement, FieldElement, FieldElement]

    @classmethod
    def of(cls, tower: FieldTower, *coords) -> "ProjPoint":
        if len(coords) == 1:
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ProjectiveError("a projective point needs three coordinates")
        return cls(_normalize([tower(x) for x in coords]))

    @classmethod
    def from_vector(cls, v: Sequence[FieldElement]) -> "ProjPoint":
        return cls(_normalize(list(v)))

    @property
    def tower(self) -> FieldTower:
        return self.coords[0].tower

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> FieldElement:
        return self.coords[i]

    def to_json(self) -> list:
        return [x.to_json() for x in self.coords]

    @classmethod
    def from_json(cls, tower: FieldTower, data) -> "ProjPoint":
        return cls.of(tower, *[tower.element_from_json(x) for x in data])

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.coords) + ")"


@dataclass(frozen=True)
class ProjMap:
    """An element of PGL_3, stored with its first nonzero entry (row-major) equal to 1."""
    matrix: Matrix3

    @classmethod
    def of(cls, matrix: Matrix3) -> "ProjMap":
        if not matrix.det():
            raise ProjectiveError("a projective map needs a nonzero determinant")
        entries = _normalize(matrix.entries())
        return cls(Matrix3((entries[0:3], entries[3:6], entries[6:9])))

    @classmethod
    def from_rows(cls, tower: FieldTower, rows: Sequence[Sequence]) -> "ProjMap":
        return cls.of(Matrix3.of(tower, rows))

    @classmethod
    def identity(cls, tower: FieldTower) -> "ProjMap":
        return cls(Matrix3.identity(tower))

    @property
    def tower(self) -> FieldTower:
        return self.matrix.tower

    def __matmul__(self, other: "ProjMap") -> "ProjMap":
        """Composition self ∘ other."""
        return ProjMap.of(self.matrix @ other.matrix)

    def __call__(self, point: ProjPoint) -> ProjPoint:
        return ProjPoint.from_vector(self.matrix.apply(point.coords))

    def inverse(self) -> "ProjMap":
        return ProjMap.of(self.matrix.adjugate())

    def power(self, n: int) -> "ProjMap":
        base = self if n >= 0 else self.inverse()
        result = ProjMap.identity(self.tower)
        for _ in range(abs(n)):
            result = result @ base
        return result

    def is_identity(self) -> bool:
        return self == ProjMap.identity(self.tower)

    def transpose(self) -> "ProjMap":
        return ProjMap.of(self.matrix.transpose())

    def to_json(self) -> list:
        return self.matrix.to_json()

    def pretty(self) -> List[List[str]]:
        return self.matrix.pretty()


def in_general_position(points: Sequence[ProjPoint]) -> bool:
    """No three of the points are collinear."""
    for a, b, c in itertools.combinations(points, 3):
        if not det3([a.coords, b.coords, c.coords]):
            return False
    return True


def _frame_matrix(points: Sequence[ProjPoint]) -> Matrix3:
    # Columns scaled so e1, e2, e3, (1,1,1) map to the four points.
    basis = Matrix3(tuple(zip(*[p.coords for p in points[:3]])))
    scales = basis.inverse().apply(points[3].coords)
    return Matrix3(tuple(tuple(basis.rows[i][j] * scales[j] for j in range(3)) for i in range(3)))


def fit_proj_map(pairs: Sequence[Tuple[ProjPoint, ProjPoint]]) -> Optional[ProjMap]:
    """
    The unique projective map sending four source points to four targets.

    Args:
        pairs: Four (source, target) pairs; sources in general position

    Returns:
        The ProjMap, or None when the targets are not in general position
    """
    if len(pairs) != 4:
        raise ProjectiveError("fit_proj_map needs exactly four point pairs")
    sources = [s for s, _ in pairs]
    targets = [t for _, t in pairs]
    if not in_general_position(sources):
        raise ProjectiveError("source points are not in general position")
    if not in_general_position(targets):
        return None
    s = _frame_matrix(sources)
    t = _frame_matrix(targets)
    return ProjMap.of(t @ s.inverse())


def general_position_quadruples(points: Sequence[ProjPoint]) -> Iterable[Tuple[int, int, int, int]]:
    """Index quadruples of points in general position, in lexicographic order."""
    for combo in itertools.combinations(range(len(points)), 4):
        if in_general_position([points[i] for i in combo]):
            yield combo


def proj_order(m: ProjMap, bound: int) -> Optional[int]:
    """Least n <= bound with m^n projectively the identity."""
    identity = ProjMap.identity(m.tower)
    power = m
    for n in range(1, bound + 1):
        if power == identity:
            return n
        power = power @ m
    return None
