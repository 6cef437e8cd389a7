"""
Shared fixtures and oracles of the test suite.
"""

import random
import time
from typing import Sequence

from cadorder.polyarith import PolySet, Polynomial, parse_polynomial
from cadorder.types import ProblemInstance, Variable, make_variables

NAMES3 = ("x1", "x2", "x3")
X1, X2, X3 = make_variables(NAMES3)


def poly(text: str, names: Sequence[str] = NAMES3) -> Polynomial:
    res = parse_polynomial(text, names)
    assert res, res
    return res.unwrapped


def polyset(*texts: str, names: Sequence[str] = NAMES3) -> PolySet:
    return PolySet(len(names), [poly(t, names) for t in texts])


def s3() -> PolySet:
    """The three variable worked example"""
    return polyset("x3^3 + x2^3 + x2 - x1^4", "x2^3 - x1")


def s3_problem() -> ProblemInstance:
    return ProblemInstance("s3", make_variables(NAMES3), s3())


def random_poly(rng: random.Random, nvars: int, main: int, degree: int, other_degree: int = 2,
                density: float = 0.6) -> Polynomial:
    """Degree exactly `degree` in slot `main`, coefficients in [-9, 9]"""
    terms = {}
    for d in range(degree + 1):
        for e in range(other_degree + 1):
            if d != degree and rng.random() > density:
                continue
            c = rng.randint(-9, 9)
            if c:
                exponents = [0] * nvars
                exponents[main] = d
                exponents[1 - main] = e
                terms[tuple(exponents)] = c
    top = [0] * nvars
    top[main] = degree
    terms.setdefault(tuple(top), rng.choice([-3, -2, -1, 1, 2, 3]))
    return Polynomial(nvars, terms)


def specialize(p: Polynomial, position: int, value: int) -> dict[int, int]:
    """Univariate coefficients (by degree in the other slot) after fixing `position` to value"""
    out: dict[int, int] = {}
    for exponents, c in p.items():
        rest = [e for i, e in enumerate(exponents) if i != position]
        k = sum(rest)
        out[k] = out.get(k, 0) + c * value ** exponents[position]
    return {k: c for k, c in out.items() if c}


def evaluate_at(p: Polynomial, values: Sequence[int]) -> int:
    total = 0
    for exponents, c in p.items():
        term = c
        for x, e in zip(values, exponents):
            term *= x ** e
        total += term
    return total


def sylvester(f: dict[int, int], g: dict[int, int]) -> list[list[int]]:
    m = max(f)
    n = max(g)
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for k, c in f.items():
            row[i + m - k] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, c in g.items():
            row[i + n - k] = c
        rows.append(row)
    return rows


def bareiss_det(matrix: list[list[int]]) -> int:
    """Fraction free Gaussian elimination, every division exact"""
    a = [row[:] for row in matrix]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def variable(index: int, names: Sequence[str] = NAMES3) -> Variable:
    return make_variables(names)[index - 1]


def stalled_step(polys: PolySet, v: Variable) -> PolySet:
    """A projection step that outlives any limit used by the tests"""
    time.sleep(60)
    return polys
