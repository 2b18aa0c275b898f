"""
Mini-grammar for exact scalars, points and matrices at the shell / HTTP
boundary.

Expressions are parsed with sympy and then folded into tower elements:
rationals like ``-3/2``, tower generators by name (``w``), ``+ - * /``,
integer powers (``^`` or ``**``), points ``(1, 1, -c)`` and matrices
``diag(1, 1, 2)`` or ``[[1,0,0],[0,w,0],[0,0,1]]``.
"""

import logging
from fractions import Fraction
from typing import List

import sympy
from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                        standard_transformations)

from core.exceptions import ExpressionError, FieldError
from core.field import FieldElement, FieldTower
from core.projective import Matrix3, ProjPoint

logger = logging.getLogger(__name__)

_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def _parse(text: str, tower: FieldTower):
    local = {name: sympy.Symbol(name) for name in tower.generator_names}
    local["diag"] = sympy.diag
    local["Matrix"] = sympy.Matrix
    try:
        return parse_expr(text, local_dict=local, global_dict={"Integer": sympy.Integer,
                                                               "Rational": sympy.Rational,
                                                               "Symbol": sympy.Symbol,
                                                               "Float": sympy.Float},
                          transformations=_TRANSFORMATIONS, evaluate=True)
    except Exception as e:
        raise ExpressionError(f"cannot parse {text!r}: {e}") from e


def _fold(expr, tower: FieldTower) -> FieldElement:
    if isinstance(expr, sympy.Rational):
        return tower.scalar(Fraction(int(expr.p), int(expr.q)))
    if isinstance(expr, sympy.Symbol):
        try:
            return tower.gen(expr.name)
        except FieldError as e:
            raise ExpressionError(f"unknown generator {expr.name!r}") from e
    if isinstance(expr, sympy.Add):
        total = tower.zero
        for arg in expr.args:
            total = total + _fold(arg, tower)
        return total
    if isinstance(expr, sympy.Mul):
        product = tower.one
        for arg in expr.args:
            product = product * _fold(arg, tower)
        return product
    if isinstance(expr, sympy.Pow):
        base, exponent = expr.args
        if not isinstance(exponent, sympy.Integer):
            raise ExpressionError(f"only integer powers are exact here: {expr}")
        try:
            return _fold(base, tower) ** int(exponent)
        except FieldError as e:
            raise ExpressionError(str(e)) from e
    raise ExpressionError(f"unsupported expression {expr} ({type(expr).__name__})")


def parse_scalar(text: str, tower: FieldTower) -> FieldElement:
    """Parse one tower element, e.g. ``2``, ``-w - 1`` or ``1 + s``."""
    expr = _parse(str(text), tower)
    if isinstance(expr, (sympy.MatrixBase, tuple, sympy.Tuple)):
        raise ExpressionError(f"expected a scalar, got {text!r}")
    return _fold(expr, tower)


def parse_point(text: str, tower: FieldTower) -> ProjPoint:
    """Parse a projective point ``(a, b, c)``; the brackets are optional."""
    expr = _parse(str(text), tower)
    if isinstance(expr, sympy.MatrixBase):
        items = list(expr)
    elif isinstance(expr, (tuple, list, sympy.Tuple)):
        items = list(expr)
    else:
        raise ExpressionError(f"expected a point (a, b, c), got {text!r}")
    if len(items) != 3:
        raise ExpressionError(f"a point needs three coordinates, got {len(items)}")
    coords = [_fold(sympy.sympify(c), tower) for c in items]
    if not any(coords):
        raise ExpressionError("the zero vector is not a projective point")
    return ProjPoint.of(tower, *coords)


def parse_matrix(text: str, tower: FieldTower) -> Matrix3:
    """Parse a 3x3 matrix: ``diag(a,b,c)``, ``Matrix([[...]])`` or ``[[...],[...],[...]]``."""
    expr = _parse(str(text), tower)
    if isinstance(expr, (list, tuple, sympy.Tuple)):
        try:
            expr = sympy.Matrix(expr)
        except Exception as e:
            raise ExpressionError(f"cannot read a matrix from {text!r}") from e
    if not isinstance(expr, sympy.MatrixBase) or expr.shape != (3, 3):
        raise ExpressionError(f"expected a 3x3 matrix, got {text!r}")
    return Matrix3.of(tower, [[_fold(expr[i, j], tower) for j in range(3)] for i in range(3)])


def parse_scalars(texts: List[str], tower: FieldTower) -> List[FieldElement]:
    return [parse_scalar(t, tower) for t in texts]
