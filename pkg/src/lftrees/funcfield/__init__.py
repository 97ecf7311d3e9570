"""Exact arithmetic in F_p, F_p[x], F_p(x), F_p(x)[y, 1/y] and F_p(x, y)."""
from lftrees.errors import ModulusMismatch
from lftrees.funcfield.birat import BiRat, YLaurent, substitute_y
from lftrees.funcfield.expr import parse_birat, parse_ratfunc
from lftrees.funcfield.fields import (
    ZERO_DEGREE,
    FpElem,
    Poly,
    PrimeField,
    check_prime,
    is_irreducible,
    is_prime,
    multiplicity,
    poly_gcd,
)
from lftrees.funcfield.ratfunc import RatFunc


def _check(a, b):
    pa, pb = getattr(a, "p", None), getattr(b, "p", None)
    if pa is not None and pb is not None and pa != pb:
        raise ModulusMismatch(f"operands over F_{pa} and F_{pb}")


def ff_add(a, b):
    _check(a, b)
    return a + b


def ff_mul(a, b):
    _check(a, b)
    return a * b


def ff_neg(a):
    return -a


def ff_inv(a):
    return a.inv()


__all__ = [
    "BiRat", "FpElem", "Poly", "PrimeField", "RatFunc", "YLaurent", "ZERO_DEGREE",
    "check_prime", "ff_add", "ff_inv", "ff_mul", "ff_neg", "is_irreducible", "is_prime",
    "multiplicity", "parse_birat", "parse_ratfunc", "poly_gcd", "substitute_y",
]
