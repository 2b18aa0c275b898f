"""
Exact linear algebra over any field whose elements support + - * / and bool().

Works for both ``fractions.Fraction`` and ``core.field.FieldElement``; nothing
here rounds.
"""

from typing import Dict, List, Optional, Sequence, Tuple


def row_echelon(rows: Sequence[Sequence]) -> Tuple[List[list], List[int]]:
    """
    Reduced row echelon form.

    Args:
        rows: Matrix as a sequence of equal-length rows

    Returns:
        Tuple of (nonzero reduced rows, pivot column of each row)
    """
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = 1 / work[r][c]
        work[r] = [v * inv for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, zero, one) -> List[list]:
    """
    Basis of {v : rows · v = 0}, one vector per free column, in column order.

    ``zero`` and ``one`` fix the element type of the result when ``rows`` is
    empty.
    """
    reduced, pivots = row_echelon(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def same_row_space(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    ra, _ = row_echelon(a)
    rb, _ = row_echelon(b)
    if len(ra) != len(rb):
        return False
    return all(x == y for row_a, row_b in zip(ra, rb) for x, y in zip(row_a, row_b))


def solve_square(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[list]:
    """Unique solution of matrix · x = rhs, or None when the matrix is singular."""
    n = len(matrix)
    augmented = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    reduced, pivots = row_echelon(augmented)
    if pivots[:n] != list(range(n)) or len(pivots) != n:
        return None
    return [reduced[i][n] for i in range(n)]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        acc = row[0] * v[0]
        for k in range(1, len(v)):
            acc = acc + row[k] * v[k]
        out.append(acc)
    return out


def identity_matrix(n: int, zero, one) -> List[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


class SparseEchelon:
    """
    Incrementally built echelon basis of sparse vectors (dict column -> value).

    Each stored row has leading entry 1 at its pivot column and no entries in
    columns left of it, so reducing against pivots in ascending order yields
    the unique representative with zeros at every pivot column.
    """

    def __init__(self):
        self.rows: Dict[int, Dict[int, object]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, vector: Dict[int, object]) -> Dict[int, object]:
        v = {k: x for k, x in vector.items() if x}
        for p in self.pivots:
            coeff = v.get(p)
            if not coeff:
                continue
            for k, x in self.rows[p].items():
                nv = v.get(k, 0) - coeff * x if k in v else -coeff * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vector: Dict[int, object]) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        v = self.reduce(vector)
        if not v:
            return False
        lead = min(v)
        inv = 1 / v[lead]
        self.rows[lead] = {k: x * inv for k, x in v.items()}
        return True
