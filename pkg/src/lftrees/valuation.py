"""Discrete valuations on F_p(x), Gauss extensions to F_p(x, y), Laurent expansion.

Valuations take values in the integers plus ``INF`` (``math.inf``), which
is only ever the valuation of zero.  Integer arithmetic with ``INF``
saturates the way the ultrametric axioms need.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from flint import nmod_poly

from lftrees.errors import NotIrreducible, ParseError, UnsupportedPlace
from lftrees.funcfield import BiRat, Poly, RatFunc, YLaurent, is_irreducible, multiplicity, parse_ratfunc

INF = math.inf

ValInt = int | float  # float only for INF


@dataclass(frozen=True)
class Place:
    """A place of F_p(x): ``pi is None`` means the place at infinity (minus the degree)."""

    pi: Poly | None = None

    def __post_init__(self):
        pi = self.pi
        if pi is None:
            return
        if pi.degree < 1 or pi.lc != 1:
            raise NotIrreducible(f"place polynomial {pi} must be monic of degree >= 1")
        if not is_irreducible(pi):
            raise NotIrreducible(f"{pi} is reducible over F_{pi.p}")

    @classmethod
    def infinity(cls) -> Place:
        return cls(None)

    @classmethod
    def at(cls, pi: Poly) -> Place:
        return cls(pi)

    @property
    def is_infinite(self) -> bool:
        return self.pi is None

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else self.pi.degree

    def uniformizer(self, p: int) -> RatFunc:
        if self.pi is None:
            return RatFunc.x(p).inv()
        return RatFunc.from_poly(self.pi)

    def residue_lifts(self, p: int) -> list[RatFunc]:
        """Constants 0..p-1, a full set of residues when the residue field is F_p."""
        if self.degree != 1:
            raise UnsupportedPlace(f"residue field of {self} is larger than F_{p}")
        return [RatFunc.constant(u, p) for u in range(p)]

    @classmethod
    def parse(cls, spec: str, p: int) -> Place:
        s = spec.strip()
        if s in ("inf", "infinity", "oo"):
            return cls.infinity()
        if s.startswith("poly:"):
            s = s[5:]
        f = parse_ratfunc(s, p)
        if not f.is_polynomial():
            raise ParseError(f"place {spec!r} is not a polynomial")
        return cls.at(f.num)

    def __str__(self):
        if self.pi is None:
            return "inf"
        s = str(self.pi)
        return s if s == "x" else f"poly:{s}"


def val(f: RatFunc, place: Place) -> ValInt:
    if f.is_zero():
        return INF
    if place.pi is None:
        return f.den.degree - f.num.degree
    return multiplicity(f.num, place.pi) - multiplicity(f.den, place.pi)


@dataclass(frozen=True)
class GaussPlace:
    """The Gauss extension of ``base`` to F_p(x)[y] with v(y) = ``w``."""

    base: Place
    w: int = 0


def _laurent_term_vals(f: YLaurent, gp: GaussPlace) -> list[ValInt]:
    return [val(c, gp.base) + e * gp.w for e, c in f._t.items()]


def _min_unique(vals: list[ValInt]) -> tuple[ValInt, bool]:
    if not vals:
        return INF, True
    m = min(vals)
    return m, vals.count(m) == 1


def gauss_val(f: BiRat | RatFunc | YLaurent, gp: GaussPlace) -> ValInt:
    return gauss_val_strict(f, gp)[0]


def gauss_val_strict(f: BiRat | RatFunc | YLaurent, gp: GaussPlace) -> tuple[ValInt, bool]:
    """Gauss valuation plus a flag telling whether both minima are attained once.

    When the flag is set the value is the true valuation of ``f`` for every
    transcendental y with v(y) = w, not just for the Gauss extension.
    """
    if isinstance(f, RatFunc):
        return val(f, gp.base), True
    if isinstance(f, YLaurent):
        return _min_unique(_laurent_term_vals(f, gp))
    if f.is_zero():
        return INF, True
    vn, un = _min_unique(_laurent_term_vals(f.num, gp))
    vd, ud = _min_unique(_laurent_term_vals(f.den, gp))
    return vn - vd, un and ud


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated expansion sum(c * pi^e for e, c in terms) + O(pi^precision)."""

    place: Place
    p: int
    terms: dict[int, int] = field(default_factory=dict)
    precision: int = 0

    def to_ratfunc(self) -> RatFunc:
        pi = self.place.uniformizer(self.p)
        total = RatFunc.constant(0, self.p)
        for e, c in self.terms.items():
            total = total + pi ** e * c
        return total

    def key(self) -> tuple:
        return tuple(sorted(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return f"O(pi^{self.precision})"
        if self.place.is_infinite:
            var = "(1/x)"
        else:
            var = "x" if str(self.place.pi) == "x" else f"({self.place.pi})"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            parts.append(f"{c}" if e == 0 else f"{c}*{var}^{e}")
        return " + ".join(parts)


def _series_quotient(n: nmod_poly, d: nmod_poly, length: int) -> list[int]:
    """First ``length`` coefficients of n/d as a power series; d(0) != 0."""
    if length <= 0:
        return []
    inv = d.inverse_series_trunc(length)
    q = n.mul_low(inv, length)
    coeffs = [int(c) for c in q.coeffs()]
    return coeffs + [0] * (length - len(coeffs))


def _strip_t(f: nmod_poly) -> tuple[nmod_poly, int]:
    coeffs = [int(c) for c in f.coeffs()]
    k = 0
    while coeffs[k] == 0:
        k += 1
    return nmod_poly(coeffs[k:], int(f.modulus())), k


def laurent_expand(f: RatFunc, place: Place, precision: int) -> LaurentSeries:
    """Expand f in powers of the uniformizer, keeping exponents < ``precision``."""
    p = f.p
    if place.degree != 1:
        raise UnsupportedPlace(f"Laurent expansion needs a degree-1 place, got {place}")
    if f.is_zero():
        return LaurentSeries(place, p, {}, precision)
    if place.pi is None:
        n = f._n.reverse()
        d = f._d.reverse()
        v0 = f._d.degree() - f._n.degree()
    else:
        a = (-int(place.pi.coeffs[0])) % p
        shift = nmod_poly([a, 1], p)
        n, vn = _strip_t(f._n(shift))
        d, vd = _strip_t(f._d(shift))
        v0 = vn - vd
    coeffs = _series_quotient(n, d, precision - v0)
    terms = {v0 + i: c for i, c in enumerate(coeffs) if c}
    return LaurentSeries(place, p, terms, precision)
