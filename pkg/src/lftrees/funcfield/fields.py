"""The prime field F_p and the polynomial ring F_p[x].

Polynomials are backed by FLINT's ``nmod_poly``; this module wraps them
in a hashable, immutable type and adds the few operations the rest of the
package needs (monic gcd, trial-division irreducibility, evaluation).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from flint import fmpz, nmod_poly

from lftrees.errors import DivisionByZero, ModulusMismatch, NotPrime

#: degree reported for the zero polynomial
ZERO_DEGREE = -1


def is_prime(n: int) -> bool:
    return n >= 2 and bool(fmpz(n).is_prime())


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p!r} is not a prime")
    return p


def same_modulus(a, b) -> int:
    pa, pb = a.p, b.p
    if pa != pb:
        raise ModulusMismatch(f"operands over F_{pa} and F_{pb}")
    return pa


class FpElem:
    """A residue in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = int(value) % p
        self.p = p

    def _other(self, other):
        if isinstance(other, FpElem):
            same_modulus(self, other)
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FpElem(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FpElem(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FpElem(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FpElem(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(-self.value, self.p)

    def inv(self) -> FpElem:
        if self.value == 0:
            raise DivisionByZero(f"inverse of 0 in F_{self.p}")
        return FpElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * FpElem(o, self.p).inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return FpElem(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FpElem({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Poly:
    """Immutable element of F_p[x]; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("_f",)

    def __init__(self, coeffs, p: int):
        self._f = nmod_poly([int(c) % p for c in coeffs], p)

    @classmethod
    def _wrap(cls, f: nmod_poly) -> Poly:
        obj = cls.__new__(cls)
        obj._f = f
        return obj

    @classmethod
    def x(cls, p: int) -> Poly:
        return cls([0, 1], p)

    @classmethod
    def constant(cls, c: int, p: int) -> Poly:
        return cls([c], p)

    @property
    def p(self) -> int:
        return int(self._f.modulus())

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self._f.coeffs())

    @property
    def degree(self) -> int:
        return int(self._f.degree())

    def is_zero(self) -> bool:
        return self._f.is_zero()

    def is_one(self) -> bool:
        return self._f.is_one()

    @property
    def lc(self) -> int:
        return int(self._f.leading_coefficient()) if not self._f.is_zero() else 0

    def monic(self) -> Poly:
        if self._f.is_zero():
            return self
        return Poly._wrap(self._f * pow(self.lc, -1, self.p))

    def _coerce(self, other) -> nmod_poly | None:
        if isinstance(other, Poly):
            same_modulus(self, other)
            return other._f
        if isinstance(other, int):
            return nmod_poly([other % self.p], self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly._wrap(self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly._wrap(self._f - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly._wrap(o - self._f)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly._wrap(self._f * o)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly._wrap(-self._f)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        return Poly._wrap(self._f ** n)

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q, r = divmod(self._f, o)
        return Poly._wrap(q), Poly._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, a: int) -> int:
        return int(self._f(a))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self._f == other._f
        if isinstance(other, int):
            return self._f == nmod_poly([other % self.p], self.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __bool__(self):
        return not self._f.is_zero()

    def __repr__(self):
        return f"Poly({list(self.coeffs)}, {self.p})"

    def __str__(self):
        return format_poly(self.coeffs)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    same_modulus(a, b)
    if a.is_zero() and b.is_zero():
        return a
    return Poly._wrap(a._f.gcd(b._f)).monic()


def multiplicity(f: Poly, pi: Poly) -> int:
    """Largest m with pi^m dividing f (f nonzero)."""
    if f.is_zero():
        raise ValueError("multiplicity in the zero polynomial")
    m = 0
    g = f._f
    while True:
        q, r = divmod(g, pi._f)
        if not r.is_zero():
            return m
        g = q
        m += 1


def is_irreducible(f: Poly) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    n = f.degree
    if n < 1:
        return False
    p = f.p
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = nmod_poly(list(tail) + [1], p)
            if (f._f % g).is_zero():
                return False
    return True


def format_poly(coeffs, var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[i])
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        mono = var if i == 1 else f"{var}^{i}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class PrimeField:
    """F_p with convenience constructors for the layers built on it."""

    p: int

    def __post_init__(self):
        check_prime(self.p)

    def __call__(self, value: int) -> FpElem:
        return FpElem(value, self.p)

    def poly(self, coeffs) -> Poly:
        return Poly(coeffs, self.p)

    @property
    def x(self):
        from lftrees.funcfield.ratfunc import RatFunc
        return RatFunc.x(self.p)

    @property
    def y(self):
        from lftrees.funcfield.birat import BiRat
        return BiRat.y(self.p)

    def ratfunc(self, text: str):
        from lftrees.funcfield.expr import parse_ratfunc
        return parse_ratfunc(text, self.p)

    def birat(self, text: str):
        from lftrees.funcfield.expr import parse_birat
        return parse_birat(text, self.p)
