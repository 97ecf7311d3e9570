"""Laurent polynomials in y over F_p(x), and the field F_p(x, y) built from them.

A :class:`BiRat` is stored as ``num / den`` with both parts in
F_p(x)[y, 1/y].  After normalization ``den`` has lowest y-exponent 0 and
lowest coefficient 1, and ``num``, ``den`` share no nonunit common factor,
so the stored pair is unique per field element.
"""
from __future__ import annotations

from lftrees.errors import DivisionByZero, ModulusMismatch
from lftrees.funcfield.fields import Poly
from lftrees.funcfield.ratfunc import RatFunc


class YLaurent:
    """Finite sum of c_l * y^l with nonzero RatFunc coefficients."""

    __slots__ = ("_t", "p")

    def __init__(self, terms: dict[int, RatFunc] | None = None, p: int | None = None):
        terms = terms or {}
        if p is None:
            if not terms:
                raise ValueError("modulus needed for the zero Laurent polynomial")
            p = next(iter(terms.values())).p
        self.p = p
        self._t = {}
        for e, c in terms.items():
            if c.p != p:
                raise ModulusMismatch(f"coefficient over F_{c.p} in a Laurent polynomial over F_{p}")
            if c:
                self._t[int(e)] = c

    @classmethod
    def _raw(cls, t: dict[int, RatFunc], p: int) -> YLaurent:
        obj = cls.__new__(cls)
        obj._t = t
        obj.p = p
        return obj

    @classmethod
    def constant(cls, c: RatFunc) -> YLaurent:
        return cls._raw({0: c} if c else {}, c.p)

    @classmethod
    def monomial(cls, c: RatFunc, e: int) -> YLaurent:
        return cls._raw({e: c} if c else {}, c.p)

    @property
    def terms(self) -> dict[int, RatFunc]:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    @property
    def min_exp(self) -> int | None:
        return min(self._t) if self._t else None

    @property
    def max_exp(self) -> int | None:
        return max(self._t) if self._t else None

    def coeff(self, e: int) -> RatFunc:
        c = self._t.get(e)
        return c if c is not None else RatFunc.constant(0, self.p)

    def leading(self) -> RatFunc:
        return self._t[max(self._t)]

    def is_y_free(self) -> bool:
        return not self._t or set(self._t) == {0}

    def __add__(self, other: YLaurent) -> YLaurent:
        if other.p != self.p:
            raise ModulusMismatch(f"operands over F_{self.p} and F_{other.p}")
        t = dict(self._t)
        for e, c in other._t.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return YLaurent._raw(t, self.p)

    def __neg__(self) -> YLaurent:
        return YLaurent._raw({e: -c for e, c in self._t.items()}, self.p)

    def __sub__(self, other: YLaurent) -> YLaurent:
        return self + (-other)

    def __mul__(self, other: YLaurent) -> YLaurent:
        if other.p != self.p:
            raise ModulusMismatch(f"operands over F_{self.p} and F_{other.p}")
        t: dict[int, RatFunc] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = e1 + e2
                prod = c1 * c2
                s = t.get(e)
                t[e] = prod if s is None else s + prod
        return YLaurent._raw({e: c for e, c in t.items() if c}, self.p)

    def scale(self, c: RatFunc) -> YLaurent:
        if not c:
            return YLaurent._raw({}, self.p)
        return YLaurent._raw({e: v * c for e, v in self._t.items()}, self.p)

    def shift(self, k: int) -> YLaurent:
        return YLaurent._raw({e + k: c for e, c in self._t.items()}, self.p)

    def substitute_y(self, n: int) -> YLaurent:
        """Image under y -> y * x^n."""
        if n == 0:
            return self
        x = RatFunc.x(self.p)
        return YLaurent._raw({e: c * x ** (n * e) for e, c in self._t.items()}, self.p)

    def __eq__(self, other):
        if not isinstance(other, YLaurent):
            return NotImplemented
        return self.p == other.p and self._t == other._t

    def __hash__(self):
        return hash((self.p, tuple(sorted(self._t.items(), key=lambda kv: kv[0]))))

    def __repr__(self):
        return f"YLaurent({self})"

    def __str__(self):
        return format_laurent(self)


def format_laurent(f: YLaurent) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for e in sorted(f._t, reverse=True):
        c = f._t[e]
        cs = str(c)
        if e == 0:
            parts.append(cs)
            continue
        mono = "y" if e == 1 else f"y^{e}"
        if c.is_one():
            parts.append(mono)
        else:
            if "+" in cs or "/" in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts)


# -- dense polynomials in y over F_p(x), used only for gcd reduction ----------

def _to_dense(f: YLaurent) -> list[RatFunc]:
    lo, hi = f.min_exp, f.max_exp
    zero = RatFunc.constant(0, f.p)
    return [f._t.get(e, zero) for e in range(lo, hi + 1)]


def _trim(a: list[RatFunc]) -> list[RatFunc]:
    while a and not a[-1]:
        a.pop()
    return a


def _dense_divmod(a: list[RatFunc], b: list[RatFunc]) -> tuple[list[RatFunc], list[RatFunc]]:
    a = list(a)
    zero = RatFunc.constant(0, b[0].p)
    db = len(b) - 1
    inv_lead = b[-1].inv()
    q = [zero] * max(len(a) - db, 1)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        c = a[-1] * inv_lead
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] = a[k + i] - c * bi
        _trim(a)
    return _trim(q), a


def _dense_gcd(a: list[RatFunc], b: list[RatFunc]) -> list[RatFunc]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    inv_lead = a[-1].inv()
    return [c * inv_lead for c in a]


def _from_dense(a: list[RatFunc], shift: int, p: int) -> YLaurent:
    return YLaurent._raw({i + shift: c for i, c in enumerate(a) if c}, p)


def _normalize(num: YLaurent, den: YLaurent) -> tuple[YLaurent, YLaurent]:
    if den.is_zero():
        raise DivisionByZero("division by the zero element of F_p(x, y)")
    p = den.p
    if num.is_zero():
        return num, YLaurent._raw({0: RatFunc.constant(1, p)}, p)
    lo = den.min_exp
    if len(den._t) == 1:
        c = den._t[lo].inv()
        return num.shift(-lo).scale(c), YLaurent._raw({0: RatFunc.constant(1, p)}, p)
    nd, dd = _to_dense(num), _to_dense(den)
    g = _dense_gcd(nd, dd)
    if len(g) > 1:
        nd, _ = _dense_divmod(nd, g)
        dd, _ = _dense_divmod(dd, g)
    num = _from_dense(nd, num.min_exp, p)
    den = _from_dense(dd, den.min_exp, p)
    lo = den.min_exp
    c = den._t[lo].inv()
    return num.shift(-lo).scale(c), den.shift(-lo).scale(c)


class BiRat:
    """Element of F_p(x, y) with y transcendental over F_p(x)."""

    __slots__ = ("num", "den")

    def __init__(self, num: YLaurent, den: YLaurent | None = None):
        if den is None:
            den = YLaurent._raw({0: RatFunc.constant(1, num.p)}, num.p)
        if num.p != den.p:
            raise ModulusMismatch(f"numerator over F_{num.p}, denominator over F_{den.p}")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num: YLaurent, den: YLaurent) -> BiRat:
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def lift(cls, c: RatFunc | int, p: int | None = None) -> BiRat:
        if isinstance(c, int):
            c = RatFunc.constant(c, p)
        one = YLaurent._raw({0: RatFunc.constant(1, c.p)}, c.p)
        return cls._raw(YLaurent.constant(c), one)

    @classmethod
    def from_laurent(cls, f: YLaurent) -> BiRat:
        return cls._raw(f, YLaurent._raw({0: RatFunc.constant(1, f.p)}, f.p))

    @classmethod
    def y(cls, p: int, power: int = 1) -> BiRat:
        return cls.from_laurent(YLaurent.monomial(RatFunc.constant(1, p), power))

    @property
    def p(self) -> int:
        return self.num.p

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        """True when the denominator is 1, i.e. the value lies in F_p(x)[y, 1/y]."""
        return len(self.den._t) == 1

    def is_y_free(self) -> bool:
        return self.is_laurent() and self.num.is_y_free()

    def to_ratfunc(self) -> RatFunc:
        if not self.is_y_free():
            raise ValueError(f"{self} depends on y")
        return self.num.coeff(0)

    def _coerce(self, other) -> BiRat | None:
        if isinstance(other, BiRat):
            if other.p != self.p:
                raise ModulusMismatch(f"operands over F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, RatFunc):
            if other.p != self.p:
                raise ModulusMismatch(f"operands over F_{self.p} and F_{other.p}")
            return BiRat.lift(other)
        if isinstance(other, int):
            return BiRat.lift(other, self.p)
        if isinstance(other, Poly):
            return BiRat.lift(RatFunc.from_poly(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_laurent() and o.is_laurent():
            return BiRat.from_laurent(self.num + o.num)
        return BiRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return BiRat._raw(-self.num, self.den)

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
        if self.is_laurent() and o.is_laurent():
            return BiRat.from_laurent(self.num * o.num)
        return BiRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> BiRat:
        if self.is_zero():
            raise DivisionByZero("inverse of zero in F_p(x, y)")
        return BiRat(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by zero in F_p(x, y)")
        return BiRat(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = BiRat.lift(1, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def substitute_y(self, n: int) -> BiRat:
        return BiRat(self.num.substitute_y(n), self.den.substitute_y(n))

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, BiRat) else other
        if o is None:
            return NotImplemented
        if o.p != self.p:
            return False
        # cross-multiplication; cheap when both denominators are 1
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        # valid because the normalized (num, den) pair is unique
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"BiRat({self})"

    def __str__(self):
        n = format_laurent(self.num)
        if self.is_laurent():
            return n
        if len(self.num._t) > 1 or "+" in n or "/" in n:
            n = f"({n})"
        return f"{n}/({format_laurent(self.den)})"


def substitute_y(f: BiRat, n: int) -> BiRat:
    """Apply the field automorphism y -> y * x^n."""
    return f.substitute_y(n)
