import random

from cadorder.polyarith import (
    PolySet,
    Polynomial,
    content_and_primitive,
    coprime_basis,
    discriminant,
    exact_quotient,
    gcd,
    normalize,
    pseudo_remainder,
    resultant,
    squarefree_part,
)
from cadorder.polyarith.algorithms import prem
from cadorder.result import DATA

from helpers import X1, X2, X3, poly, polyset, random_poly


def test_pseudo_remainder():
    assert pseudo_remainder(poly("x1^2"), poly("x1"), X1).unwrapped == 0
    assert pseudo_remainder(poly("x1^2 + x2"), poly("2*x1 + 1"), X1).unwrapped == poly("4*x2 + 1")


def test_pseudo_remainder_identity():
    p = poly("x1^3*x2 + x1 - x2^2")
    q = poly("x2*x1^2 + 1")
    r = pseudo_remainder(p, q, X1).unwrapped
    assert r.degree(X1.position) < q.degree(X1.position)
    k = p.degree(X1.position) - q.degree(X1.position) + 1
    lc = q.leading_coeff(X1.position)
    assert exact_quotient(lc ** k * p - r, q) is not None


def test_pseudo_remainder_constant_divisor():
    res = pseudo_remainder(poly("x1^2"), poly("x2 + 1"), X1)
    assert not res
    assert res.kind == DATA
    assert "divisor constant in variable" in res.message


def test_content_and_primitive():
    assert content_and_primitive(poly("x2*x1^2 + x2^2"), X1).unwrapped == (poly("x2"), poly("x1^2 + x2"))
    assert content_and_primitive(poly("x1 + 1"), X1).unwrapped == (poly("1"), poly("x1 + 1"))
    # the monomial factor x1 depends on x1 and stays in the primitive part
    assert content_and_primitive(poly("6*x1^2 + 4*x1"), X1).unwrapped == (poly("2"), poly("3*x1^2 + 2*x1"))


def test_content_absorbs_sign():
    c, primitive = content_and_primitive(poly("-x2*x1 - x2"), X1).unwrapped
    assert c * primitive == poly("-x2*x1 - x2")
    assert primitive == poly("x1 + 1")


def test_content_of_zero():
    res = content_and_primitive(Polynomial.zero(3), X1)
    assert not res
    assert res.kind == DATA


def test_gcd():
    assert gcd(poly("x1^2 - 1"), poly("x1 - 1")) == poly("x1 - 1")
    assert gcd(poly("x2^3 - x1"), poly("x2^3 + x2 - x1^4")) == 1
    assert gcd(Polynomial.zero(3), Polynomial.zero(3)) == 0
    assert gcd(poly("-2*x1 + 2"), Polynomial.zero(3)) == poly("x1 - 1")
    assert gcd(poly("x1*x2 + x2"), poly("x1*x3 + x3")) == poly("x1 + 1")
    assert gcd(poly("6*x1"), poly("4*x1^2")) == poly("x1")


def test_gcd_divides_both():
    rng = random.Random(5)
    for _ in range(40):
        common = random_poly(rng, 2, 0, rng.randint(1, 2), other_degree=1)
        p = common * random_poly(rng, 2, 0, rng.randint(1, 3), other_degree=1)
        q = common * random_poly(rng, 2, 1, rng.randint(1, 2), other_degree=1)
        g = gcd(p, q)
        assert exact_quotient(p, g) is not None
        assert exact_quotient(q, g) is not None
        assert exact_quotient(g, normalize(common)) is not None
        assert gcd(g, g) == g
        assert normalize(g) == g


def test_squarefree_part():
    assert squarefree_part(poly("x2^3 + x2"), X2).unwrapped == polyset("x2", "x2^2 + 1")
    assert squarefree_part(poly("(x1 - 1)^2"), X1).unwrapped == polyset("x1 - 1")
    assert squarefree_part(poly("x2^12 - x2^3 - x2"), X2).unwrapped == polyset("x2", "x2^11 - x2^2 - 1")
    assert not squarefree_part(Polynomial.zero(3), X1)


def test_squarefree_factors_are_squarefree():
    rng = random.Random(9)
    for _ in range(25):
        a = random_poly(rng, 2, 0, rng.randint(1, 2), other_degree=1)
        b = random_poly(rng, 2, 1, rng.randint(1, 2), other_degree=1)
        p = a ** 2 * b
        factors = squarefree_part(p, X1).unwrapped
        product = Polynomial.constant(2, 1)
        for f in factors:
            product = product * f
            for position in f.positions():
                assert gcd(f, f.diff(position)).is_constant
        assert exact_quotient(p, product) is not None


def test_coprime_basis():
    ps = polyset("x1^2 - 1", "x1^2 + x1")
    assert coprime_basis(ps) == polyset("x1 + 1", "x1 - 1", "x1")
    assert coprime_basis(PolySet(3)) == PolySet(3)


def test_resultant_examples():
    assert resultant(poly("x1 - x2^3"), poly("x1^4 - x2^3 - x2"), X1).unwrapped == poly("x2^12 - x2^3 - x2")
    assert resultant(poly("x1 - x2"), poly("x1 - x3"), X1).unwrapped in (poly("x3 - x2"), poly("x2 - x3"))
    assert resultant(poly("x1^2 - 2"), poly("x1^2 - 3"), X1).unwrapped == 1


def test_resultant_is_free_of_variable():
    r = resultant(poly("x1^2*x2 + x3"), poly("x1*x3 - x2^2"), X1).unwrapped
    assert r.degree(X1.position) == 0


def test_resultant_needs_positive_degree():
    res = resultant(poly("x2 + 1"), poly("x1 - 1"), X1)
    assert not res
    assert res.kind == DATA
    assert "resultant needs positive degree" in res.message


def test_discriminant_examples():
    assert discriminant(poly("x1^2 + x2*x1 + x3"), X1).unwrapped == poly("x2^2 - 4*x3")
    assert discriminant(poly("x3^3 + x1"), X3).unwrapped == poly("-27*x1^2")
    assert discriminant(poly("x1^4 - x2"), X1).unwrapped == poly("-256*x2^3")


def test_discriminant_needs_degree_two():
    res = discriminant(poly("x1*x2 + 1"), X1)
    assert not res
    assert "discriminant needs degree >= 2" in res.message


def test_prem_below_divisor_degree_is_identity():
    p = poly("x1 + x2")
    assert prem(p, poly("x1^2 + 1"), X1.position) == p
