"""
Sparse commutative polynomials with coefficients in a FieldTower.

Used for the defining forms of point varieties, rational parametrizations of
their components and the sigma formulas. Monomials are exponent tuples.
"""

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from core.exceptions import FieldError
from core.field import FieldElement, FieldTower
from core.projective import Matrix3, cross3

TERNARY_NAMES = ("x", "y", "z")
BINARY_NAMES = ("s", "t")


class Polynomial:
    __slots__ = ("tower", "nvars", "terms")

    def __init__(self, tower: FieldTower, nvars: int, terms: Optional[Dict[Tuple[int, ...], FieldElement]] = None):
        self.tower = tower
        self.nvars = nvars
        self.terms: Dict[Tuple[int, ...], FieldElement] = {
            m: c for m, c in (terms or {}).items() if c
        }

    @classmethod
    def zero(cls, tower: FieldTower, nvars: int) -> "Polynomial":
        return cls(tower, nvars)

    @classmethod
    def constant(cls, tower: FieldTower, nvars: int, value) -> "Polynomial":
        return cls(tower, nvars, {(0,) * nvars: tower(value)})

    @classmethod
    def variable(cls, tower: FieldTower, nvars: int, index: int) -> "Polynomial":
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(tower, nvars, {mono: tower.one})

    @classmethod
    def variables(cls, tower: FieldTower, nvars: int) -> Tuple["Polynomial", ...]:
        return tuple(cls.variable(tower, nvars, i) for i in range(nvars))

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise FieldError("polynomials in different numbers of variables")
            return other
        return Polynomial.constant(self.tower, self.nvars, other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other) -> "Polynomial":
        o = self._lift(other)
        terms = dict(self.terms)
        for m, c in o.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return Polynomial(self.tower, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.tower, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = self.tower(other)
            return Polynomial(self.tower, self.nvars, {m: v * c for m, v in self.terms.items()})
        o = self._lift(other)
        terms: Dict[Tuple[int, ...], FieldElement] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                p = c1 * c2
                terms[m] = terms[m] + p if m in terms else p
        return Polynomial(self.tower, self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        result = Polynomial.constant(self.tower, self.nvars, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def evaluate(self, values: Sequence[FieldElement]) -> FieldElement:
        total = self.tower.zero
        for m, c in self.terms.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    def substitute(self, polys: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable i by polys[i]; the result lives in their ring."""
        if len(polys) != self.nvars:
            raise FieldError("substitution needs one polynomial per variable")
        nvars = polys[0].nvars
        cache: Dict[Tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            if (i, e) not in cache:
                cache[(i, e)] = Polynomial.constant(self.tower, nvars, 1) if e == 0 else power(i, e - 1) * polys[i]
            return cache[(i, e)]

        result = Polynomial.zero(self.tower, nvars)
        for m, c in self.terms.items():
            term = Polynomial.constant(self.tower, nvars, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def scalar_multiple_of(self, other: "Polynomial") -> Optional[FieldElement]:
        """The c with self == c * other, or None. Both must be nonzero."""
        if self.is_zero() or other.is_zero() or set(self.terms) != set(other.terms):
            return None
        mono = next(iter(other.terms))
        c = self.terms[mono] / other.terms[mono]
        if all(self.terms[m] == c * v for m, v in other.terms.items()):
            return c
        return None

    def proportional_to(self, other: "Polynomial") -> bool:
        return self.scalar_multiple_of(other) is not None

    def coefficients(self) -> List[Tuple[Tuple[int, ...], FieldElement]]:
        return sorted(self.terms.items(), reverse=True)

    def to_json(self) -> list:
        return [{"exponents": list(m), "coefficient": c.to_json()} for m, c in self.coefficients()]

    @classmethod
    def from_json(cls, tower: FieldTower, nvars: int, data: Iterable[dict]) -> "Polynomial":
        terms: Dict[Tuple[int, ...], FieldElement] = {}
        for term in data:
            m = tuple(int(e) for e in term["exponents"])
            if len(m) != nvars:
                raise FieldError(f"monomial {m} does not have {nvars} exponents")
            c = tower.element_from_json(term["coefficient"])
            terms[m] = terms[m] + c if m in terms else c
        return cls(tower, nvars, terms)

    def pretty(self, names: Optional[Sequence[str]] = None) -> str:
        if names is None:
            names = TERNARY_NAMES if self.nvars == 3 else (BINARY_NAMES if self.nvars == 2 else
                                                            tuple(f"v{i}" for i in range(self.nvars)))
        parts = []
        for m, c in self.coefficients():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
            text = str(c)
            if not mono:
                parts.append(text)
            elif text == "1":
                parts.append(mono)
            elif text == "-1":
                parts.append(f"-{mono}")
            elif " " in text:
                parts.append(f"({text})*{mono}")
            else:
                parts.append(f"{text}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self) -> str:
        return f"Polynomial({self.pretty()})"


Triple = Tuple[Polynomial, Polynomial, Polynomial]


def apply_matrix(m: Matrix3, triple: Sequence[Polynomial]) -> Triple:
    """The polynomial triple M · (p0, p1, p2)^t."""
    return tuple(triple[0] * r[0] + triple[1] * r[1] + triple[2] * r[2] for r in m.rows)


def substitute_triple(triple: Sequence[Polynomial], into: Sequence[Polynomial]) -> Triple:
    return tuple(p.substitute(into) for p in triple)


def evaluate_triple(triple: Sequence[Polynomial], values: Sequence[FieldElement]) -> List[FieldElement]:
    return [p.evaluate(values) for p in triple]


def triples_parallel(u: Sequence[Polynomial], v: Sequence[Polynomial]) -> bool:
    """u and v agree as projective points identically (all 2x2 minors vanish)."""
    return all(c.is_zero() for c in cross3(u, v))


def triple_is_zero(u: Sequence[Polynomial]) -> bool:
    return all(p.is_zero() for p in u)
