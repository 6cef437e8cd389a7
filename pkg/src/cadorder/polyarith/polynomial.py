"""
Sparse multivariate polynomials with arbitrary precision integer coefficients.

A Polynomial maps exponent vectors (one slot per problem variable, slot i holds
the exponent of x_{i+1}) to nonzero integers. Values are immutable; every
operation returns a new canonical polynomial, so equality is structural.

A PolySet is the normalized set form used for projection sets: every member is
nonconstant, integer content free and signed so that its lexicographically
greatest monomial has a positive coefficient.
"""

from functools import reduce
from math import gcd as igcd
from typing import Iterable, Iterator, Mapping, Optional

from ..types import Variable

Monomial = tuple[int, ...]


def grlex_key(exponents: Monomial) -> tuple:
    """Display order key: total degree first, then lexicographic by variable index"""
    return (sum(exponents), exponents)


class Polynomial:
    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, int]] = None):
        if nvars < 0:
            raise ValueError(f"negative number of variables: {nvars}")
        clean = {}
        for exponents, coeff in (terms or {}).items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != nvars:
                raise ValueError(f"exponent vector {exponents} does not have {nvars} slots")
            if any(e < 0 for e in exponents):
                raise ValueError(f"negative exponent in {exponents}")
            coeff = int(coeff)
            if coeff:
                clean[exponents] = clean.get(exponents, 0) + coeff
                if not clean[exponents]:
                    del clean[exponents]
        self._nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, nvars: int, terms: dict) -> "Polynomial":
        """Trusted constructor, terms must already be canonical"""
        obj = cls.__new__(cls)
        obj._nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # ========== Constructors ==========

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: int) -> "Polynomial":
        return cls._wrap(nvars, {(0,) * nvars: int(value)} if value else {})

    @classmethod
    def gen(cls, nvars: int, index: int) -> "Polynomial":
        """The variable x_index (1-based) as a polynomial"""
        if not 1 <= index <= nvars:
            raise ValueError(f"variable index {index} outside 1..{nvars}")
        exponents = [0] * nvars
        exponents[index - 1] = 1
        return cls._wrap(nvars, {tuple(exponents): 1})

    @classmethod
    def from_coefficients(cls, nvars: int, position: int, coeffs: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Inverse of coefficients(): sum of coeffs[k] * x^k in the given slot"""
        terms = {}
        for k, coeff in coeffs.items():
            for exponents, c in coeff._terms.items():
                shifted = list(exponents)
                shifted[position] += k
                key = tuple(shifted)
                value = terms.get(key, 0) + c
                if value:
                    terms[key] = value
                else:
                    terms.pop(key, None)
        return cls._wrap(nvars, terms)

    # ========== Inspection ==========

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    @property
    def constant_value(self) -> int:
        return self._terms.get((0,) * self._nvars, 0)

    def degree(self, position: int) -> int:
        """Degree in the variable stored at slot `position`; 0 for the zero polynomial"""
        if position >= self._nvars:
            return 0
        return max((e[position] for e in self._terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def positions(self) -> frozenset[int]:
        """Slots of the variables that occur in some term"""
        return frozenset(i for e in self._terms for i, k in enumerate(e) if k)

    def coefficients(self, position: int) -> dict[int, "Polynomial"]:
        """Coefficients as a univariate polynomial in slot `position`; they are free of it"""
        grouped: dict[int, dict] = {}
        for exponents, c in self._terms.items():
            k = exponents[position]
            stripped = exponents[:position] + (0,) + exponents[position + 1:]
            grouped.setdefault(k, {})[stripped] = c
        return {k: Polynomial._wrap(self._nvars, terms) for k, terms in grouped.items()}

    def leading_coeff(self, position: int) -> "Polynomial":
        d = self.degree(position)
        terms = {}
        for exponents, c in self._terms.items():
            if exponents[position] == d:
                terms[exponents[:position] + (0,) + exponents[position + 1:]] = c
        return Polynomial._wrap(self._nvars, terms)

    def lex_leading_coeff(self) -> int:
        """Coefficient of the lexicographically greatest monomial (x1 most significant)"""
        if not self._terms:
            return 0
        return self._terms[max(self._terms)]

    def integer_content(self) -> int:
        return reduce(igcd, self._terms.values(), 0)

    def monomial_content(self) -> Monomial:
        """Componentwise minimum of the exponent vectors"""
        if not self._terms:
            return (0,) * self._nvars
        return tuple(min(column) for column in zip(*self._terms))

    def sort_key(self) -> tuple:
        """Deterministic total order used when listing sets"""
        return tuple((grlex_key(e), c) for e, c in self.display_terms())

    def display_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in graded lexicographic order, greatest first"""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    # ========== Arithmetic ==========

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._nvars != self._nvars:
                raise ValueError(f"mixing polynomials over {self._nvars} and {other._nvars} variables")
            return other
        if isinstance(other, int):
            return Polynomial.constant(self._nvars, other)
        return NotImplemented

    def _combine(self, other: "Polynomial", sign: int) -> "Polynomial":
        terms = dict(self._terms)
        for exponents, c in other._terms.items():
            value = terms.get(exponents, 0) + sign * c
            if value:
                terms[exponents] = value
            else:
                terms.pop(exponents, None)
        return Polynomial._wrap(self._nvars, terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._combine(self, -1)

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap(self._nvars, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Polynomial.zero(self._nvars)
            return Polynomial._wrap(self._nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                key = tuple(a + b for a, b in zip(ea, eb))
                value = terms.get(key, 0) + ca * cb
                if value:
                    terms[key] = value
                else:
                    terms.pop(key, None)
        return Polynomial._wrap(self._nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self._nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def shift(self, position: int, k: int) -> "Polynomial":
        """Multiply by x^k in slot `position`"""
        if not k:
            return self
        terms = {}
        for exponents, c in self._terms.items():
            shifted = list(exponents)
            shifted[position] += k
            terms[tuple(shifted)] = c
        return Polynomial._wrap(self._nvars, terms)

    def divide_monomial(self, monomial: Monomial) -> "Polynomial":
        """Exact division by a monomial that divides every term"""
        terms = {}
        for exponents, c in self._terms.items():
            reduced = tuple(a - b for a, b in zip(exponents, monomial))
            if any(e < 0 for e in reduced):
                raise ArithmeticError(f"monomial {monomial} does not divide {self}")
            terms[reduced] = c
        return Polynomial._wrap(self._nvars, terms)

    def scale_div(self, divisor: int) -> "Polynomial":
        """Exact division of every coefficient by an integer"""
        terms = {}
        for exponents, c in self._terms.items():
            if c % divisor:
                raise ArithmeticError(f"{divisor} does not divide {self}")
            terms[exponents] = c // divisor
        return Polynomial._wrap(self._nvars, terms)

    def diff(self, position: int) -> "Polynomial":
        """Partial derivative with respect to slot `position`"""
        terms = {}
        for exponents, c in self._terms.items():
            k = exponents[position]
            if k:
                lowered = list(exponents)
                lowered[position] = k - 1
                terms[tuple(lowered)] = c * k
        return Polynomial._wrap(self._nvars, terms)

    # ========== Identity ==========

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == Polynomial.constant(self._nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self._nvars}, {self})"

    def __str__(self) -> str:
        from .text import render
        return render(self)


def exact_quotient(p: Polynomial, q: Polynomial) -> Optional[Polynomial]:
    """p / q when q divides p over the integers, None otherwise"""
    if q.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero:
        return Polynomial.zero(p.nvars)
    if q.is_constant:
        c = q.constant_value
        if any(v % c for _, v in p.items()):
            return None
        return p.scale_div(c)
    lead = max(q._terms)
    lead_c = q._terms[lead]
    rest = dict(p._terms)
    quotient = {}
    while rest:
        top = max(rest)
        c = rest[top]
        step = tuple(a - b for a, b in zip(top, lead))
        if any(e < 0 for e in step) or c % lead_c:
            return None
        factor = c // lead_c
        quotient[step] = factor
        for exponents, qc in q._terms.items():
            key = tuple(a + b for a, b in zip(exponents, step))
            value = rest.get(key, 0) - factor * qc
            if value:
                rest[key] = value
            else:
                rest.pop(key, None)
    return Polynomial._wrap(p.nvars, quotient)


def divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact division whose exactness is an algebraic invariant of the caller"""
    quotient = exact_quotient(p, q)
    if quotient is None:
        raise ArithmeticError(f"inexact division of {p} by {q}")
    return quotient


def normalize(p: Polynomial) -> Polynomial:
    """Divide by the integer content and make the lex-greatest coefficient positive"""
    if p.is_zero:
        return p
    content = p.integer_content()
    if p.lex_leading_coeff() < 0:
        content = -content
    if content == 1:
        return p
    return p.scale_div(content)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def subtract(p: Polynomial, q: Polynomial) -> Polynomial:
    return p - q


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


class PolySet:
    """Immutable set of normalized nonconstant polynomials over a fixed variable universe"""
    __slots__ = ("_nvars", "_polys")

    def __init__(self, nvars: int, polys: Iterable[Polynomial] = ()):
        members = set()
        for p in polys:
            if p.nvars != nvars:
                raise ValueError(f"polynomial over {p.nvars} variables in a set over {nvars}")
            if p.is_constant:
                continue
            members.add(normalize(p))
        self._nvars = nvars
        self._polys = frozenset(members)

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def polys(self) -> frozenset[Polynomial]:
        return self._polys

    def sorted(self) -> list[Polynomial]:
        """Members in a deterministic order: lowest total degree first"""
        return sorted(self._polys, key=lambda p: (p.total_degree(), len(p), p.sort_key()))

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self._polys)

    def __contains__(self, p: Polynomial) -> bool:
        return normalize(p) in self._polys

    def __or__(self, other: "PolySet") -> "PolySet":
        return PolySet(self._nvars, self._polys | other._polys)

    def add(self, p: Polynomial) -> "PolySet":
        return PolySet(self._nvars, self._polys | {p})

    def positions(self) -> frozenset[int]:
        return frozenset().union(*(p.positions() for p in self._polys))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolySet):
            return NotImplemented
        return self._nvars == other._nvars and self._polys == other._polys

    def __hash__(self) -> int:
        return hash((self._nvars, self._polys))

    def __repr__(self) -> str:
        return "{" + ", ".join(str(p) for p in self) + "}"


def degree(p: Polynomial, v: Variable) -> int:
    return p.degree(v.position)


def degree_sum(polys: Iterable[Polynomial], v: Variable) -> int:
    """Sum of the degrees of v over the polynomials of a set"""
    return sum(p.degree(v.position) for p in polys)


def sotd_value(polys: Iterable[Polynomial]) -> int:
    """Sum of the total degrees of every monomial of every polynomial"""
    return sum(sum(exponents) for p in polys for exponents, _ in p.items())


def total_degree(p: Polynomial) -> int:
    return p.total_degree()


def coefficients(p: Polynomial, v: Variable) -> dict[int, Polynomial]:
    """Coefficients of p viewed as a univariate polynomial in v"""
    return p.coefficients(v.position)
