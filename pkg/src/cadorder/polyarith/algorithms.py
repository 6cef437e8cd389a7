"""
Algebraic subroutines of the projection operator: pseudo division, contents,
gcds, squarefree splitting, resultants and discriminants.

All arithmetic stays over the integers. The resultant runs a subresultant
polynomial remainder sequence in the main variable; divisions along the
sequence are exact by construction, a failing one raises ArithmeticError since
it can only mean a bug. Gcds go to sympy's dense integer polynomials.
"""

from functools import lru_cache

import sympy
from sympy import ZZ

from ..result import DATA, Ok, Result
from ..types import Variable
from .polynomial import PolySet, Polynomial, divide, normalize

# ========== Internal, position based ==========


def prem(p: Polynomial, q: Polynomial, position: int) -> Polynomial:
    """Pseudo remainder of p by q in slot `position`, q of positive degree there"""
    dq = q.degree(position)
    dp = p.degree(position)
    if dp < dq:
        return p
    lc_q = q.leading_coeff(position)
    n = dp - dq + 1
    r = p
    while not r.is_zero:
        dr = r.degree(position)
        if dr < dq:
            break
        lc_r = r.leading_coeff(position)
        r = r * lc_q - (q * lc_r).shift(position, dr - dq)
        n -= 1
    if n:
        r = r * lc_q ** n
    return r


def content(p: Polynomial, position: int) -> Polynomial:
    """Normalized gcd of the coefficients of p in slot `position`"""
    coeffs = sorted(p.coefficients(position).values(), key=len)
    g = Polynomial.zero(p.nvars)
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.is_constant:
            return Polynomial.constant(p.nvars, 1)
    return g


def split_content(p: Polynomial, position: int) -> tuple[Polynomial, Polynomial]:
    """(content, primitive) with content * primitive == p and a normalized primitive"""
    c = content(p, position)
    primitive = divide(p, c)
    unit = primitive.integer_content()
    if primitive.lex_leading_coeff() < 0:
        unit = -unit
    return c * unit, primitive.scale_div(unit)


@lru_cache(maxsize=None)
def _generators(nvars: int) -> tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"g1:{nvars + 1}")


def _to_sympy(p: Polynomial) -> sympy.Poly:
    return sympy.Poly.from_dict(dict(p.items()), *_generators(p.nvars), domain=ZZ)


def _from_sympy(f: sympy.Poly, nvars: int) -> Polynomial:
    return Polynomial(nvars, {exponents: int(c) for exponents, c in f.as_dict().items()})


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero:
        return normalize(q)
    if q.is_zero:
        return normalize(p)
    one = Polynomial.constant(p.nvars, 1)
    # integer content never survives normalization
    if p.is_constant or q.is_constant:
        return one
    return normalize(_from_sympy(_to_sympy(p).gcd(_to_sympy(q)), p.nvars))


def poly_resultant(p: Polynomial, q: Polynomial, position: int) -> Polynomial:
    """Resultant in slot `position` by the subresultant algorithm, both degrees positive"""
    a, b = p, q
    sign = 1
    if a.degree(position) < b.degree(position):
        a, b = b, a
        if a.degree(position) % 2 and b.degree(position) % 2:
            sign = -1
    g = h = Polynomial.constant(p.nvars, 1)
    while True:
        da = a.degree(position)
        db = b.degree(position)
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = prem(a, b, position)
        a = b
        if r.is_zero:
            return Polynomial.zero(p.nvars)
        b = divide(r, g * h ** delta)
        g = a.leading_coeff(position)
        if delta:
            h = divide(g ** delta, h ** (delta - 1))
        if b.degree(position) == 0:
            break
    da = a.degree(position)
    return divide(b ** da, h ** (da - 1)) * sign


def poly_discriminant(p: Polynomial, position: int) -> Polynomial:
    d = p.degree(position)
    res = poly_resultant(p, p.diff(position), position)
    if (d * (d - 1) // 2) % 2:
        res = -res
    return divide(res, p.leading_coeff(position))


def _yun(f: Polynomial, position: int) -> list[Polynomial]:
    """Squarefree factors of a primitive polynomial, grouped by multiplicity"""
    df = f.diff(position)
    g = poly_gcd(f, df)
    c = divide(f, g)
    d = divide(df, g) - c.diff(position)
    factors = []
    while not c.is_constant:
        a = poly_gcd(c, d)
        if not a.is_constant:
            factors.append(a)
        c = divide(c, a)
        d = divide(d, a) - c.diff(position)
    return factors


def _split_by_partials(f: Polynomial, primitive_in: int) -> list[Polynomial]:
    """
    Split a squarefree f, primitive in slot `primitive_in`, until each piece is
    coprime to all of its partial derivatives.

    For a squarefree h, gcd(h, dh/dx) is the content of h in x, so only the
    contents in the other slots are computed.
    """
    work = [(normalize(f), primitive_in)]
    done = []
    while work:
        h, primitive = work.pop()
        for position in sorted(h.positions() - {primitive}):
            g = content(h, position)
            if not g.is_constant:
                work.extend(((g, None), (normalize(divide(h, g)), position)))
                break
        else:
            done.append(h)
    return done


def squarefree_factors(p: Polynomial, position: int | None = None) -> list[Polynomial]:
    """Normalized squarefree factors of p, splitting contents recursively"""
    p = normalize(p)
    if p.is_constant:
        return []
    factors = []
    shift = p.monomial_content()
    for i, e in enumerate(shift):
        if e:
            factors.append(Polynomial.gen(p.nvars, i + 1))
    p = p.divide_monomial(shift)
    if p.is_constant:
        return factors
    if position is None or p.degree(position) == 0:
        position = max(p.positions())
    c, primitive = split_content(p, position)
    factors.extend(squarefree_factors(c))
    for a in _yun(primitive, position):
        factors.extend(_split_by_partials(a, position))
    return factors


def basis(polys: list[Polynomial]) -> list[Polynomial]:
    """Refine squarefree polynomials into a pairwise coprime set with the same zeros"""
    members = list(dict.fromkeys(normalize(p) for p in polys if not p.is_constant))
    refined = True
    while refined:
        refined = False
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                g = poly_gcd(members[i], members[j])
                if g.is_constant:
                    continue
                pieces = [g, normalize(divide(members[i], g)), normalize(divide(members[j], g))]
                rest = [m for k, m in enumerate(members) if k not in (i, j)]
                members = list(dict.fromkeys(rest + [x for x in pieces if not x.is_constant]))
                refined = True
                break
            if refined:
                break
    return members


# ========== Public, variable based ==========


def pseudo_remainder(p: Polynomial, q: Polynomial, v: Variable) -> Result[Polynomial]:
    """
    prem such that lc_v(q)^k * p = quot * q + prem, k = deg_v(p) - deg_v(q) + 1
    """
    if q.degree(v.position) < 1:
        return Result.error(f"divisor constant in variable {v}", kind=DATA)
    return Ok(prem(p, q, v.position))


def content_and_primitive(p: Polynomial, v: Variable) -> Result[tuple[Polynomial, Polynomial]]:
    """
    Split p into its content w.r.t. v and a primitive part.

    The primitive part carries no integer content and a positive leading
    coefficient, so every integer and sign factor is moved into the content.
    Monomial factors in v stay in the primitive part: 6*x1^2 + 4*x1 gives
    (2, 3*x1^2 + 2*x1) w.r.t. x1.
    """
    if p.is_zero:
        return Result.error("content of the zero polynomial", kind=DATA)
    return Ok(split_content(p, v.position))


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Greatest common divisor in normal form, gcd(p, 0) is the normal form of p"""
    if p.nvars != q.nvars:
        raise ValueError(f"mixing polynomials over {p.nvars} and {q.nvars} variables")
    return poly_gcd(p, q)


def squarefree_part(p: Polynomial, v: Variable) -> Result[PolySet]:
    if p.is_zero:
        return Result.error("squarefree part of the zero polynomial", kind=DATA)
    return Ok(PolySet(p.nvars, squarefree_factors(p, v.position)))


def coprime_basis(polys: PolySet) -> PolySet:
    return PolySet(polys.nvars, basis(list(polys)))


def resultant(p: Polynomial, q: Polynomial, v: Variable) -> Result[Polynomial]:
    if p.degree(v.position) < 1 or q.degree(v.position) < 1:
        return Result.error(f"resultant needs positive degree in {v}", kind=DATA)
    return Ok(poly_resultant(p, q, v.position))


def discriminant(p: Polynomial, v: Variable) -> Result[Polynomial]:
    if p.degree(v.position) < 2:
        return Result.error(f"discriminant needs degree >= 2 in {v}", kind=DATA)
    return Ok(poly_discriminant(p, v.position))
