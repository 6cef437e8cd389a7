"""
Resultants and discriminants against an independent Sylvester determinant.

Both sides are polynomials in x2 of bounded degree, so agreeing on more
points than that bound proves them equal. Trivariate cases go to sympy.
"""

import random
import time

import sympy

from cadorder.polyarith import Polynomial, discriminant, normalize, parse_polynomial, render, resultant, squarefree_part

from helpers import NAMES3, X1, X2, X3, bareiss_det, evaluate_at, poly, random_poly, specialize, sylvester

OTHER = 1


def _sylvester_resultant_at(p, q, t):
    f = specialize(p, OTHER, t)
    g = specialize(q, OTHER, t)
    return bareiss_det(sylvester(f, g))


def _check_at_enough_points(p, q, r):
    bound = p.degree(0) * q.degree(OTHER) + q.degree(0) * p.degree(OTHER)
    checked = 0
    t = -15
    while checked <= bound:
        # the specialization must keep both degrees in x1
        if evaluate_at(p.leading_coeff(0), (0, t)) and evaluate_at(q.leading_coeff(0), (0, t)):
            assert evaluate_at(r, (0, t)) == _sylvester_resultant_at(p, q, t)
            checked += 1
        t += 1


def test_bareiss_oracle():
    assert bareiss_det([[2, 0], [0, 3]]) == 6
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    # x^2 - 2 against x^2 - 3
    assert bareiss_det(sylvester({2: 1, 0: -2}, {2: 1, 0: -3})) == 1


def test_resultant_matches_sylvester_determinant():
    rng = random.Random(20240101)
    for _ in range(200):
        p = random_poly(rng, 2, 0, rng.randint(1, 6))
        q = random_poly(rng, 2, 0, rng.randint(1, 6))
        r = resultant(p, q, X1).unwrapped
        assert r.degree(0) == 0
        _check_at_enough_points(p, q, r)


def test_discriminant_resultant_identity():
    rng = random.Random(77)
    for _ in range(100):
        d = rng.randint(2, 5)
        p = random_poly(rng, 2, 0, d)
        disc = discriminant(p, X1).unwrapped
        res = resultant(p, p.diff(0), X1).unwrapped
        sign = -1 if (d * (d - 1) // 2) % 2 else 1
        assert p.leading_coeff(0) * disc == res * sign


def _trivariate(rng):
    p = random_poly(rng, 3, 0, rng.randint(1, 4))
    return p + Polynomial.gen(3, 3) * random_poly(rng, 3, 1, 1, other_degree=1)


def _as_sympy(p):
    return sympy.sympify(render(p, NAMES3).replace("^", "**"))


def _from_sympy(expr):
    return parse_polynomial(str(sympy.expand(expr)), NAMES3).unwrapped


def test_resultant_agrees_with_sympy():
    x1 = sympy.Symbol("x1")
    rng = random.Random(31)
    for _ in range(30):
        p, q = _trivariate(rng), _trivariate(rng)
        expected = _from_sympy(sympy.resultant(_as_sympy(p), _as_sympy(q), x1))
        assert resultant(p, q, X1).unwrapped in (expected, expected * -1)


def test_discriminant_agrees_with_sympy():
    x1 = sympy.Symbol("x1")
    rng = random.Random(32)
    for _ in range(30):
        p = random_poly(rng, 3, 0, rng.randint(2, 4)) + Polynomial.gen(3, 3)
        expected = _from_sympy(sympy.discriminant(_as_sympy(p), x1))
        assert discriminant(p, X1).unwrapped in (expected, expected * -1)


def test_squarefree_split_of_large_resultant_agrees_with_sympy():
    p = poly("x3^4*x2^2 + x3^3*x1^3 - 7*x3*x2^3*x1 + x2^4 - 3")
    q = poly("x3^4 + x3^2*x2^3*x1^2 - x1^5 + 2*x2")
    r = resultant(p, q, X3).unwrapped
    assert (r.degree(0), r.degree(1)) == (27, 24)

    start = time.perf_counter()
    factors = squarefree_part(r, X2).unwrapped
    assert time.perf_counter() - start < 10.0

    product = Polynomial.constant(3, 1)
    for f in factors:
        product = product * f
    assert normalize(product) == normalize(_from_sympy(sympy.sqf_part(_as_sympy(r))))
