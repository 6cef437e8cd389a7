"""Human readable infix form of polynomials, e.g. `x1^4 - x2^3 - x2`"""

from tokenize import TokenError
from typing import Optional, Sequence

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from ..result import DATA, Ok, Result
from .polynomial import Polynomial

_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def _names(nvars: int, names: Optional[Sequence[str]]) -> Sequence[str]:
    if names is None:
        return [f"x{i + 1}" for i in range(nvars)]
    if len(names) != nvars:
        raise ValueError(f"{len(names)} names for {nvars} variables")
    return names


def render(p: Polynomial, names: Optional[Sequence[str]] = None) -> str:
    """Terms in graded lexicographic order, greatest first"""
    if p.is_zero:
        return "0"
    names = _names(p.nvars, names)
    out = []
    for exponents, coeff in p.display_terms():
        factors = []
        for name, e in zip(names, exponents):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if not out:
            out.append(f"-{body}" if coeff < 0 else body)
        else:
            out.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(out)


def parse_polynomial(text: str, names: Sequence[str]) -> Result[Polynomial]:
    """Parse an infix polynomial with integer coefficients over the given variable names"""
    symbols = [sympy.Symbol(name) for name in names]
    local = {name: symbol for name, symbol in zip(names, symbols)}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMATIONS, evaluate=True)
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError, TokenError) as e:
        return Result.error(f"cannot parse polynomial '{text}'", e, kind=DATA)

    unknown = {str(s) for s in expr.free_symbols} - set(names)
    if unknown:
        return Result.error(f"unknown symbols {sorted(unknown)} in '{text}'", kind=DATA)
    if not symbols:
        if not expr.is_Integer:
            return Result.error(f"'{text}' is not an integer constant", kind=DATA)
        return Ok(Polynomial.constant(0, int(expr)))

    try:
        poly = sympy.Poly(expr, *symbols)
    except sympy.PolynomialError as e:
        return Result.error(f"'{text}' is not a polynomial", e, kind=DATA)

    terms = {}
    for monom, coeff in poly.terms():
        if not coeff.is_Integer:
            return Result.error(f"non-integer coefficient {coeff} in '{text}'", kind=DATA)
        terms[tuple(monom)] = int(coeff)
    return Ok(Polynomial(len(names), terms))
