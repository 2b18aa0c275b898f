"""
Exact arithmetic in towers of algebraic number fields.

A tower Q = K0 ⊂ K1 ⊂ ... ⊂ Kn is declared level by level: each level adds a
named generator together with its monic minimal polynomial over the previous
level. Elements are stored flat, as rational coordinates on the monomial basis
g1^e1 * ... * gn^en (0 <= ei < deg_i). Level i has stride deg_1 * ... *
deg_(i-1), so the flat vector reshapes directly into the nested JSON form.

Irreducibility of declared minimal polynomials is trusted, not checked; a
reducible one only shows up as a zero divisor when inverting.
"""

import logging
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import mpmath

from core.exceptions import FieldError, TowerTooSmallError
from core.linalg import solve_square

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, "FieldElement"]

# Irrational weights used to fold real and imaginary parts into one real
# vector for integer relation finding.
_FOLD_WEIGHTS = ("0.7071067811865475244", "0.4487989505128276055")


def to_fraction(value) -> Fraction:
    """Parse an int, Fraction, "a/b" string or {"num", "den"} mapping."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise FieldError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as e:
            raise FieldError(f"not a rational: {value!r}") from e
    if isinstance(value, dict) and "num" in value:
        try:
            return Fraction(int(value["num"]), int(value.get("den", 1)))
        except (ValueError, ZeroDivisionError) as e:
            raise FieldError(f"not a rational: {value!r}") from e
    raise FieldError(f"not a rational: {value!r}")


def fraction_to_json(value: Fraction) -> dict:
    return {"num": str(value.numerator), "den": str(value.denominator)}


class FieldTower:
    """
    A finite tower of simple algebraic extensions of the rationals.

    Use ``FieldTower.rationals()`` and ``extend`` to build one, or
    ``FieldTower.from_json`` for tower files.
    """

    def __init__(self, parent: Optional["FieldTower"] = None,
                 name: Optional[str] = None,
                 minpoly: Sequence["FieldElement"] = (),
                 label: Optional[str] = None):
        self.parent = parent
        self.label = label
        if parent is None:
            self.levels: Tuple[Tuple[str, Tuple["FieldElement", ...]], ...] = ()
            self.degrees: Tuple[int, ...] = ()
        else:
            self.levels = parent.levels + ((name, tuple(minpoly)),)
            self.degrees = parent.degrees + (len(minpoly) - 1,)
        self.dim = 1
        strides = []
        for d in self.degrees:
            strides.append(self.dim)
            self.dim *= d
        self.strides = tuple(strides)
        self._key = tuple((n, tuple(c.coeffs for c in mp)) for n, mp in self.levels)
        self.zero = FieldElement(self, (Fraction(0),) * self.dim)
        self.one = FieldElement(self, (Fraction(1),) + (Fraction(0),) * (self.dim - 1))

    @classmethod
    def rationals(cls) -> "FieldTower":
        return cls(label="q")

    def extend(self, name: str, minpoly: Sequence[Scalar], label: Optional[str] = None) -> "FieldTower":
        """
        Adjoin a root of a monic polynomial over this tower.

        Args:
            name: Generator name, a valid identifier not used at lower levels
            minpoly: Coefficients in ascending degree, leading coefficient included

        Returns:
            The extended tower
        """
        if not name.isidentifier():
            raise FieldError(f"generator name {name!r} is not an identifier")
        if name in self.generator_names:
            raise FieldError(f"generator name {name!r} already used in the tower")
        coeffs = [self(c) for c in minpoly]
        if len(coeffs) < 3:
            raise FieldError(f"minimal polynomial of {name} must have degree at least 2")
        if coeffs[-1] != 1:
            raise FieldError(f"minimal polynomial of {name} must be monic")
        return FieldTower(self, name, coeffs, label=label)

    @property
    def generator_names(self) -> List[str]:
        return [name for name, _ in self.levels]

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldTower) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        if not self.levels:
            return "FieldTower(Q)"
        return "FieldTower(" + ", ".join(
            f"{n}: {_poly_str(mp, 'X')}" for n, mp in self.levels) + ")"

    # Element construction

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.tower is self:
                return value
            if value.tower == self:
                return FieldElement(self, value.coeffs)
            return self._embed(value)
        return self.scalar(to_fraction(value))

    def scalar(self, value: Union[int, Fraction]) -> "FieldElement":
        return FieldElement(self, (Fraction(value),) + (Fraction(0),) * (self.dim - 1))

    def basis_element(self, index: int) -> "FieldElement":
        coeffs = [Fraction(0)] * self.dim
        coeffs[index] = Fraction(1)
        return FieldElement(self, tuple(coeffs))

    def gen(self, name: str) -> "FieldElement":
        for level, (n, _) in enumerate(self.levels):
            if n == name:
                return self.basis_element(self.strides[level])
        raise FieldError(f"unknown generator {name!r}")

    def generators(self) -> Dict[str, "FieldElement"]:
        return {n: self.gen(n) for n in self.generator_names}

    def _embed(self, value: "FieldElement") -> "FieldElement":
        # Elements of a lower level of this same tower embed by zero padding.
        lower = value.tower
        if lower._key != self._key[:len(lower._key)]:
            raise FieldError("tower mismatch")
        return FieldElement(self, value.coeffs + (Fraction(0),) * (self.dim - lower.dim))

    # Structure constants

    @cached_property
    def _table(self) -> List[List[Tuple[Tuple[int, Fraction], ...]]]:
        if self.parent is None:
            return [[((0, Fraction(1)),)]]
        parent = self.parent
        n = parent.dim
        d = self.degrees[-1]
        minpoly = self.levels[-1][1]
        powers = []
        cur = [parent.one] + [parent.zero] * (d - 1)
        for _ in range(2 * d - 1):
            powers.append(cur)
            top = cur[-1]
            nxt = [parent.zero] + cur[:-1]
            if top:
                nxt = [nxt[i] - top * minpoly[i] for i in range(d)]
            cur = nxt
        table = [[None] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            e1, p1 = divmod(i, n)
            for j in range(i, self.dim):
                e2, p2 = divmod(j, n)
                base = parent.basis_element(p1) * parent.basis_element(p2)
                flat = [c for block in powers[e1 + e2] for c in (base * block).coeffs]
                entry = tuple((k, c) for k, c in enumerate(flat) if c)
                table[i][j] = entry
                table[j][i] = entry
        logger.debug(f"Built structure constants for tower of degree {self.dim}")
        return table

    # Roots of unity

    @cached_property
    def _cube_root(self) -> Optional["FieldElement"]:
        for g in self.generators().values():
            order = root_of_unity_order(g, 36)
            if order is not None and order % 3 == 0:
                return g ** (order // 3)
        roots, _ = self.find_roots([1, 1, 1])
        return roots[0] if roots else None

    def primitive_cube_root(self) -> "FieldElement":
        """A primitive cube root of unity of this tower."""
        if self._cube_root is None:
            raise TowerTooSmallError("the tower has no primitive cube root of unity",
                                     missing_polynomial="X^2 + X + 1")
        return self._cube_root

    def has_cube_root_of_unity(self) -> bool:
        return self._cube_root is not None

    # Numerical embedding and root recognition

    def numeric_generators(self, dps: int = 60) -> List:
        """
        Values of the generators in a fixed complex embedding.

        At each level the root of the embedded minimal polynomial with the
        largest real part (then largest imaginary part) is chosen.
        """
        with mpmath.workdps(dps + 20):
            values: List = []
            for level, (_, minpoly) in enumerate(self.levels):
                below = values[:]
                coeffs = [c.numeric(below) for c in reversed(minpoly)]
                roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * (dps + 20))
                roots = sorted(roots, key=lambda z: (float(mpmath.re(z)), float(mpmath.im(z))), reverse=True)
                values.append(mpmath.mpc(roots[0]))
            return values

    def numeric_basis(self, dps: int = 60) -> List:
        gens = self.numeric_generators(dps)
        with mpmath.workdps(dps + 20):
            out = []
            for index in range(self.dim):
                v = mpmath.mpc(1)
                for level, g in enumerate(gens):
                    e = (index // self.strides[level]) % self.degrees[level]
                    v *= g ** e
                out.append(v)
            return out

    def find_roots(self, coefficients: Sequence[Scalar], dps: int = 60) -> Tuple[List["FieldElement"], List["FieldElement"]]:
        """
        Roots in this tower of a univariate polynomial.

        Roots are located numerically, recognized as tower elements by integer
        relation finding and then verified exactly; only verified roots are
        returned.

        Args:
            coefficients: Ascending coefficients
            dps: Working precision in decimal digits

        Returns:
            Tuple of (roots with multiplicity, residual polynomial coefficients)
        """
        poly = _strip([self(c) for c in coefficients])
        roots: List[FieldElement] = []
        basis = None
        while len(poly) >= 2:
            if len(poly) == 2:
                r = -poly[0] / poly[1]
                roots.append(r)
                poly = _deflate(poly, r)
                break
            if basis is None:
                basis = self.numeric_basis(dps)
                gens = self.numeric_generators(dps)
            found = None
            with mpmath.workdps(dps):
                numeric = [c.numeric(gens) for c in reversed(poly)]
                try:
                    candidates = mpmath.polyroots(numeric, maxsteps=400, extraprec=4 * dps)
                except mpmath.libmp.NoConvergence:
                    logger.warning("Numerical root finding did not converge")
                    candidates = []
                for z in candidates:
                    found = self._recognize(z, basis, lambda r: _horner(poly, r) == 0)
                    if found is not None:
                        break
            if found is None:
                break
            roots.append(found)
            poly = _deflate(poly, found)
        return roots, poly

    def _recognize(self, z, basis: List, check: Callable[["FieldElement"], bool]) -> Optional["FieldElement"]:
        if abs(z) < mpmath.mpf(10) ** (-(mpmath.mp.dps // 2)):
            return self.zero if check(self.zero) else None
        for weight in _FOLD_WEIGHTS:
            rho = mpmath.mpf(weight)
            folded = [mpmath.re(b) + rho * mpmath.im(b) for b in basis]
            folded.append(mpmath.re(z) + rho * mpmath.im(z))
            try:
                relation = mpmath.pslq(folded, maxcoeff=10 ** 6, maxsteps=10 ** 5)
            except ValueError:
                relation = None
            if not relation or relation[-1] == 0:
                continue
            candidate = FieldElement(self, tuple(Fraction(-c, relation[-1]) for c in relation[:-1]))
            if check(candidate):
                return candidate
        return None

    # Serialization

    def to_json(self) -> dict:
        return {"levels": [{"name": n, "minpoly": [c.to_json() for c in mp]} for n, mp in self.levels]}

    @classmethod
    def from_json(cls, data: dict, label: Optional[str] = None) -> "FieldTower":
        tower = cls.rationals()
        for level in data.get("levels", []):
            try:
                name = level["name"]
                raw = level["minpoly"]
            except (KeyError, TypeError) as e:
                raise FieldError(f"malformed tower level: {level!r}") from e
            tower = tower.extend(name, [tower.element_from_json(c) for c in raw])
        tower.label = label or data.get("label")
        return tower

    def element_from_json(self, data) -> "FieldElement":
        if not self.levels or not isinstance(data, list):
            return self(to_fraction(data) if not isinstance(data, FieldElement) else data)
        d = self.degrees[-1]
        if len(data) > d:
            raise FieldError(f"element has {len(data)} coefficients at level {self.levels[-1][0]}, expected {d}")
        blocks = [self.parent.element_from_json(c).coeffs for c in data]
        blocks += [self.parent.zero.coeffs] * (d - len(blocks))
        return FieldElement(self, tuple(c for block in blocks for c in block))


class FieldElement:
    """An element of a FieldTower in canonical reduced form. Immutable."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs: Tuple[Fraction, ...]):
        self.tower = tower
        self.coeffs = coeffs

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.tower is self.tower or other.tower == self.tower:
                return other
            raise FieldError("tower mismatch")
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.tower.scalar(other)
        return NotImplemented

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.tower, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.tower, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.tower, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if self.is_rational:
            return FieldElement(self.tower, tuple(a[0] * x for x in b))
        if o.is_rational:
            return FieldElement(self.tower, tuple(b[0] * x for x in a))
        table = self.tower._table
        out = [Fraction(0)] * self.tower.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = table[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                p = ai * bj
                for k, c in row[j]:
                    out[k] += p * c
        return FieldElement(self.tower, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise FieldError("division by zero")
        if self.is_rational:
            return self.tower.scalar(1 / self.coeffs[0])
        dim = self.tower.dim
        columns = [(self * self.tower.basis_element(j)).coeffs for j in range(dim)]
        matrix = [[columns[j][k] for j in range(dim)] for k in range(dim)]
        rhs = [Fraction(1)] + [Fraction(0)] * (dim - 1)
        solution = solve_square(matrix, rhs)
        if solution is None:
            raise FieldError(f"{self} is a zero divisor; a declared minimal polynomial is reducible",
                             code="reducible_minpoly")
        return FieldElement(self.tower, tuple(solution))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.coeffs == other.coeffs and (self.tower is other.tower or self.tower == other.tower)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def numeric(self, generator_values: Sequence):
        """Value under the embedding that sends the generators to the given numbers."""
        tower = self.tower
        total = mpmath.mpc(0)
        for index, c in enumerate(self.coeffs):
            if not c:
                continue
            term = mpmath.mpf(c.numerator) / c.denominator
            for level, g in enumerate(generator_values[:len(tower.levels)]):
                e = (index // tower.strides[level]) % tower.degrees[level]
                if e:
                    term *= g ** e
            total += term
        return total

    def to_json(self):
        return _nested_json(self.tower, self.coeffs)

    def monomial_name(self, index: int) -> str:
        tower = self.tower
        parts = []
        for level, (name, _) in enumerate(tower.levels):
            e = (index // tower.strides[level]) % tower.degrees[level]
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        terms = []
        for index, c in enumerate(self.coeffs):
            if not c:
                continue
            name = self.monomial_name(index)
            if not name:
                terms.append(str(c))
            elif c == 1:
                terms.append(name)
            elif c == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{c}*{name}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"FieldElement({self})"


def _nested_json(tower: FieldTower, coeffs: Tuple[Fraction, ...]):
    if not tower.levels:
        return fraction_to_json(coeffs[0])
    n = tower.parent.dim
    return [_nested_json(tower.parent, coeffs[k * n:(k + 1) * n]) for k in range(tower.degrees[-1])]


def _strip(poly: List[FieldElement]) -> List[FieldElement]:
    while poly and not poly[-1]:
        poly = poly[:-1]
    return poly


def _horner(poly: Sequence[FieldElement], x: FieldElement) -> FieldElement:
    acc = x.tower.zero
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _deflate(poly: List[FieldElement], root: FieldElement) -> List[FieldElement]:
    """Exact quotient of poly by (X - root); the remainder is assumed zero."""
    out = [root.tower.zero] * (len(poly) - 1)
    carry = root.tower.zero
    for k in range(len(poly) - 1, 0, -1):
        carry = carry * root + poly[k]
        out[k - 1] = carry
    return out


def _poly_str(coeffs: Sequence[FieldElement], var: str) -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        text = str(c)
        if not mono:
            terms.append(text)
        elif text == "1":
            terms.append(mono)
        elif text == "-1":
            terms.append(f"-{mono}")
        else:
            terms.append(f"({text})*{mono}" if (" " in text) else f"{text}*{mono}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def polynomial_to_str(coeffs: Sequence[FieldElement], var: str = "X") -> str:
    return _poly_str(coeffs, var)


def root_of_unity_order(a: FieldElement, bound: int) -> Optional[int]:
    """
    Smallest n <= bound with a**n == 1.

    Args:
        a: Nonzero field element
        bound: Search bound

    Returns:
        The order, or None if a is not a root of unity of order at most bound
    """
    if not a:
        raise FieldError("root_of_unity_order of zero")
    power = a
    for n in range(1, bound + 1):
        if power == 1:
            return n
        power = power * a
    return None
