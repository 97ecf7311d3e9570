"""2x2 matrices over F_p(x) or F_p(x, y), the two-parameter SL2 family, and
tree classification by trace valuation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from lftrees.errors import DegenerateXY, NotUnimodular, SingularMatrix, ZeroParameter
from lftrees.funcfield import BiRat, RatFunc, check_prime, parse_ratfunc
from lftrees.valuation import INF, GaussPlace, Place, gauss_val, val


def _one_like(e):
    return e * 0 + 1


@dataclass(frozen=True)
class Mat2:
    m11: Any
    m12: Any
    m21: Any
    m22: Any

    @classmethod
    def identity(cls, like) -> Mat2:
        one = _one_like(like)
        zero = one * 0
        return cls(one, zero, zero, one)

    @classmethod
    def diag(cls, a, b) -> Mat2:
        return cls(a, a * 0, a * 0, b)

    @property
    def entries(self) -> tuple:
        return (self.m11, self.m12, self.m21, self.m22)

    @property
    def p(self) -> int:
        return self.m11.p

    def map(self, f) -> Mat2:
        return Mat2(f(self.m11), f(self.m12), f(self.m21), f(self.m22))

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )

    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def trace(self):
        return self.m11 + self.m22

    def adjugate(self) -> Mat2:
        return Mat2(self.m22, -self.m12, -self.m21, self.m11)

    def inv(self) -> Mat2:
        det = self.det()
        if det.is_zero():
            raise SingularMatrix("matrix is not invertible")
        adj = self.adjugate()
        if det == 1:
            return adj
        return adj.map(lambda e: e / det)

    def is_identity(self) -> bool:
        return self.m12.is_zero() and self.m21.is_zero() and self.m11 == 1 and self.m22 == 1

    def is_diagonal(self) -> bool:
        return self.m12.is_zero() and self.m21.is_zero()

    def __pow__(self, n: int) -> Mat2:
        if n < 0:
            return self.inv() ** (-n)
        result = Mat2.identity(self.m11)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def __str__(self):
        return f"[[{self.m11}, {self.m12}], [{self.m21}, {self.m22}]]"


def mat_mul(a: Mat2, b: Mat2) -> Mat2:
    return a @ b


def mat_inv(a: Mat2) -> Mat2:
    return a.inv()


def mat_det(a: Mat2):
    return a.det()


def mat_trace(a: Mat2):
    return a.trace()


def commutator(a: Mat2, b: Mat2) -> Mat2:
    """a b a^-1 b^-1."""
    return a @ b @ a.inv() @ b.inv()


def is_sl2(a: Mat2) -> bool:
    return a.det() == 1


def lift_to_birat(a: Mat2) -> Mat2:
    return a.map(lambda e: e if isinstance(e, BiRat) else BiRat.lift(e))


# -- the two-parameter family ------------------------------------------------

@dataclass(frozen=True)
class FamilyParams:
    """Nonzero c, h, d, delta in F_p(x) with X = 1 - d*delta*h + d^2 h^2 and
    Y = delta^2 - d*delta*h + h^2 both nonzero."""

    c: RatFunc
    h: RatFunc
    d: RatFunc
    delta: RatFunc

    def __post_init__(self):
        for name in ("c", "h", "d", "delta"):
            if getattr(self, name).is_zero():
                raise ZeroParameter(f"parameter {name} is zero")
        if len({e.p for e in (self.c, self.h, self.d, self.delta)}) != 1:
            raise ValueError("parameters over different primes")
        if self.X.is_zero():
            raise DegenerateXY("X = 1 - d*delta*h + d^2*h^2 vanishes")
        if self.Y.is_zero():
            raise DegenerateXY("Y = delta^2 - d*delta*h + h^2 vanishes")

    @property
    def p(self) -> int:
        return self.c.p

    @property
    def X(self) -> RatFunc:
        d, dl, h = self.d, self.delta, self.h
        return 1 - d * dl * h + d * d * h * h

    @property
    def Y(self) -> RatFunc:
        d, dl, h = self.d, self.delta, self.h
        return dl * dl - d * dl * h + h * h

    @classmethod
    def parse(cls, text: str, p: int) -> FamilyParams:
        """Comma-separated ``c,h,d,delta`` expressions."""
        parts = [s for s in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated parameters c,h,d,delta; got {len(parts)}")
        c, h, d, delta = (parse_ratfunc(s, p) for s in parts)
        return cls(c=c, h=h, d=d, delta=delta)

    def __str__(self):
        return f"c={self.c}, h={self.h}, d={self.d}, delta={self.delta}"


def matfrm_pair(params: FamilyParams) -> tuple[Mat2, Mat2, RatFunc, RatFunc]:
    """The pair (A, B) with commutator diag(Y/X, X/Y), plus X and Y."""
    c, h, d, dl = params.c, params.h, params.d, params.delta
    X, Y = params.X, params.Y
    A = Mat2(d * Y / X, (d * dl * h * (1 - d * d) + d * d * dl * dl - 1) / (c * X), c, d)
    B = Mat2(dl * X / Y, (d * dl * (1 - dl * dl) + h * (d * d * dl * dl - 1)) / (c * Y), c * h, dl)
    if A.det() != 1 or B.det() != 1:
        raise ArithmeticError("family matrices are not unimodular")
    if A.trace() != d * (X + Y) / X or B.trace() != dl * (X + Y) / Y:
        raise ArithmeticError("trace formula for A or B fails")
    if (A @ B).trace() != (d * dl * (1 + h * h) - h) * (X + Y) / (X * Y):
        raise ArithmeticError("trace formula for AB fails")
    return A, B, X, Y


def builtin_family(p: int) -> FamilyParams:
    check_prime(p)
    f = lambda s: parse_ratfunc(s, p)  # noqa: E731
    if p == 2:
        return FamilyParams(c=f("1"), h=f("x^2+x+1"), d=f("x^3/((x^2+x+1)*(x^5+1))"), delta=f("x^2"))
    return FamilyParams(c=f("1"), h=f("x"), d=f("1/x^2"), delta=f("x+1"))


def shalen_extend(A: Mat2, B: Mat2) -> tuple[Mat2, Mat2]:
    """(C, D) = (T B T^-1, T A T^-1) with T = diag(1, y)."""
    p = A.p
    y = BiRat.y(p)

    def conj(M: Mat2) -> Mat2:
        M = lift_to_birat(M)
        return Mat2(M.m11, M.m12 / y, M.m21 * y, M.m22)

    return conj(B), conj(A)


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    kind: str  # "elliptic" | "loxodromic"
    length: int
    trace_valuation: int | float

    @property
    def is_loxodromic(self) -> bool:
        return self.kind == "loxodromic"


def trace_valuation(M: Mat2, place: Place | GaussPlace):
    tr = M.trace()
    if isinstance(place, GaussPlace):
        return gauss_val(tr, place)
    if isinstance(tr, BiRat):
        if not tr.is_y_free():
            raise ValueError("trace depends on y; classify with a GaussPlace")
        tr = tr.to_ratfunc()
    return val(tr, place)


def classify(M: Mat2, place: Place | GaussPlace) -> Classification:
    if M.det() != 1:
        raise NotUnimodular("classification needs a determinant-one matrix")
    v = trace_valuation(M, place)
    if v == INF or v >= 0:
        return Classification("elliptic", 0, v)
    return Classification("loxodromic", -2 * v, v)
