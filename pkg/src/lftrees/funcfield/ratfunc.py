"""Rational functions F_p(x) in canonical form.

Canonical form: numerator and denominator coprime, denominator monic,
zero stored as 0/1.  Two values are equal iff their stored polynomials are.
"""
from __future__ import annotations

from flint import nmod_poly

from lftrees.errors import DivisionByZero, ModulusMismatch
from lftrees.funcfield.fields import Poly, format_poly


def _normalize(n: nmod_poly, d: nmod_poly) -> tuple[nmod_poly, nmod_poly]:
    if d.is_zero():
        raise DivisionByZero("rational function with zero denominator")
    p = int(d.modulus())
    if n.is_zero():
        return n, nmod_poly([1], p)
    g = n.gcd(d)
    if not g.is_one():
        n = n // g
        d = d // g
    lc = int(d.leading_coefficient())
    if lc != 1:
        inv = pow(lc, -1, p)
        n = n * inv
        d = d * inv
    return n, d


class RatFunc:
    __slots__ = ("_n", "_d")

    def __init__(self, num: Poly | int, den: Poly | int = 1, p: int | None = None):
        if isinstance(num, int) or isinstance(den, int):
            if p is None:
                p = num.p if isinstance(num, Poly) else den.p if isinstance(den, Poly) else None
            if p is None:
                raise ValueError("modulus needed for integer numerator and denominator")
            num = num if isinstance(num, Poly) else Poly.constant(num, p)
            den = den if isinstance(den, Poly) else Poly.constant(den, p)
        if num.p != den.p:
            raise ModulusMismatch(f"numerator over F_{num.p}, denominator over F_{den.p}")
        self._n, self._d = _normalize(num._f, den._f)

    @classmethod
    def _raw(cls, n: nmod_poly, d: nmod_poly) -> RatFunc:
        obj = cls.__new__(cls)
        obj._n = n
        obj._d = d
        return obj

    @classmethod
    def _make(cls, n: nmod_poly, d: nmod_poly) -> RatFunc:
        return cls._raw(*_normalize(n, d))

    @classmethod
    def constant(cls, c: int, p: int) -> RatFunc:
        return cls._raw(nmod_poly([c % p], p), nmod_poly([1], p))

    @classmethod
    def x(cls, p: int) -> RatFunc:
        return cls._raw(nmod_poly([0, 1], p), nmod_poly([1], p))

    @classmethod
    def from_poly(cls, f: Poly) -> RatFunc:
        return cls._raw(f._f, nmod_poly([1], f.p))

    @property
    def p(self) -> int:
        return int(self._d.modulus())

    @property
    def num(self) -> Poly:
        return Poly._wrap(self._n)

    @property
    def den(self) -> Poly:
        return Poly._wrap(self._d)

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_one(self) -> bool:
        return self._n.is_one() and self._d.is_one()

    def is_polynomial(self) -> bool:
        return self._d.is_one()

    def normalized(self) -> RatFunc:
        return RatFunc._make(self._n, self._d)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other._d.modulus() != self._d.modulus():
                raise ModulusMismatch(f"operands over F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return RatFunc.constant(other, self.p)
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ModulusMismatch(f"operands over F_{self.p} and F_{other.p}")
            return RatFunc.from_poly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return RatFunc._make(self._n + o._n, self._d)
        return RatFunc._make(self._n * o._d + o._n * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self._n, self._d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._n.is_zero() or o._n.is_zero():
            return RatFunc.constant(0, self.p)
        # cross-cancel first so the final gcd works on smaller inputs
        g1 = self._n.gcd(o._d)
        g2 = o._n.gcd(self._d)
        n = (self._n // g1) * (o._n // g2)
        d = (self._d // g2) * (o._d // g1)
        lc = int(d.leading_coefficient())
        if lc != 1:
            inv = pow(lc, -1, self.p)
            n, d = n * inv, d * inv
        return RatFunc._raw(n, d)

    __rmul__ = __mul__

    def inv(self) -> RatFunc:
        if self._n.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RatFunc._make(self._d, self._n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return RatFunc._raw(self._n ** k, self._d ** k)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self._d.modulus() == other._d.modulus() and self._n == other._n and self._d == other._d
        if isinstance(other, (int, Poly)):
            o = self._coerce(other)
            return self == o
        return NotImplemented

    def __hash__(self):
        return hash((self.p, tuple(int(c) for c in self._n.coeffs()), tuple(int(c) for c in self._d.coeffs())))

    def __bool__(self):
        return not self._n.is_zero()

    def __call__(self, a: int) -> int:
        d = int(self._d(a))
        if d == 0:
            raise DivisionByZero(f"denominator vanishes at x = {a}")
        return int(self._n(a)) * pow(d, -1, self.p) % self.p

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        n = format_poly([int(c) for c in self._n.coeffs()])
        if self._d.is_one():
            return n
        d = format_poly([int(c) for c in self._d.coeffs()])
        if not self._n.is_zero() and self._n.degree() > 0 and len([c for c in self._n.coeffs() if int(c)]) > 1:
            n = f"({n})"
        return f"{n}/({d})"
