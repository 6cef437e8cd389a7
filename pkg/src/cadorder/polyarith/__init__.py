from .algorithms import (
    content_and_primitive,
    coprime_basis,
    discriminant,
    gcd,
    pseudo_remainder,
    resultant,
    squarefree_part,
)
from .polynomial import (
    PolySet,
    Polynomial,
    add,
    coefficients,
    degree,
    degree_sum,
    exact_quotient,
    multiply,
    normalize,
    sotd_value,
    subtract,
    total_degree,
)
from .text import parse_polynomial, render

__all__ = [
    "Polynomial",
    "PolySet",
    "add",
    "coefficients",
    "content_and_primitive",
    "coprime_basis",
    "degree",
    "degree_sum",
    "discriminant",
    "exact_quotient",
    "gcd",
    "multiply",
    "normalize",
    "parse_polynomial",
    "pseudo_remainder",
    "render",
    "resultant",
    "sotd_value",
    "squarefree_part",
    "subtract",
    "total_degree",
]
