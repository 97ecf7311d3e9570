"""Independent reference computations used to cross-check the library.

Nothing here imports the arithmetic under test: polynomials are plain
coefficient lists (lowest degree first) and symbolic work goes through sympy.
"""
from __future__ import annotations

from functools import reduce
from math import gcd as igcd

import sympy as sp

x_sym, y_sym = sp.symbols("x y")


def trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def pmod(a, p):
    return trim([c % p for c in a])


def pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a, b = pmod(a, p), pmod(b, p)
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv % p
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] = (a[i + shift] - c * bc) % p
        a = trim(a)
    return trim(q), a


def euclid_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd by the schoolbook Euclidean algorithm."""
    a, b = pmod(a, p), pmod(b, p)
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def pmul(a, b, p):
    out = [0] * (len(a) + len(b))
    for i, ac in enumerate(a):
        for j, bc in enumerate(b):
            out[i + j] += ac * bc
    return pmod(out, p)


def _int_coeffs(poly: sp.Poly) -> tuple[list, int]:
    coeffs = [sp.Rational(c) for c in reversed(poly.all_coeffs())]
    den = reduce(lambda u, v: u * v // igcd(u, v), (c.q for c in coeffs), 1)
    return [int(c * den) for c in coeffs], den


def reduce_mod_p(expr, p: int) -> tuple[list[int], list[int]]:
    """(num, den) coefficient lists over F_p of a rational function in x with rational coefficients."""
    num, den = sp.fraction(sp.cancel(sp.together(expr)))
    n, ln = _int_coeffs(sp.Poly(num, x_sym))
    d, ld = _int_coeffs(sp.Poly(den, x_sym))
    # value = (n / ln) / (d / ld) = (n * ld) / (d * ln)
    n = [c * ld for c in n]
    d = [c * ln for c in d]
    g = reduce(igcd, n + d)
    n, d = [c // g for c in n], [c // g for c in d]
    if not pmod(d, p):
        raise ValueError(f"{expr} is not p-integral at {p}")
    return pmod(n, p), pmod(d, p)


def same_ratfunc(f, expr, p: int) -> bool:
    """Does RatFunc f equal the sympy expression reduced mod p?  Cross-multiplied, no gcd needed."""
    n, d = reduce_mod_p(expr, p)
    return pmul(list(f.num.coeffs), d, p) == pmul(list(f.den.coeffs), n, p)


def to_sympy(f) -> sp.Expr:
    """Integer lift of a RatFunc (coefficients in 0..p-1)."""
    num = sum(c * x_sym ** i for i, c in enumerate(f.num.coeffs))
    den = sum(c * x_sym ** i for i, c in enumerate(f.den.coeffs))
    return num / den


def neg_degree(expr, p: int) -> float:
    """Valuation at infinity of a rational function reduced mod p."""
    n, d = reduce_mod_p(expr, p)
    if not n:
        return float("inf")
    return (len(d) - 1) - (len(n) - 1)


def matfrm_symbolic(c, h, d, delta):
    """The four-parameter family with sympy entries, multiplied out independently."""
    X = 1 - d * delta * h + d ** 2 * h ** 2
    Y = delta ** 2 - d * delta * h + h ** 2
    A = sp.Matrix([[d * Y / X, (d * delta * h * (1 - d ** 2) + d ** 2 * delta ** 2 - 1) / (c * X)], [c, d]])
    B = sp.Matrix([[delta * X / Y, (d * delta * (1 - delta ** 2) + h * (d ** 2 * delta ** 2 - 1)) / (c * Y)], [c * h, delta]])
    return A, B, X, Y


def laurent_y_terms(expr, p: int) -> dict[int, tuple[list[int], list[int]]]:
    """Split a Laurent polynomial in y (coefficients rational in x) into reduced coefficients."""
    e = sp.expand(sp.together(expr) * 1)
    num, den = sp.fraction(sp.together(e))
    # den = y^k * q(x)
    k = sp.degree(den, y_sym)
    qx = sp.cancel(den / y_sym ** k)
    out = {}
    for (ey,), coeff in sp.Poly(sp.expand(num), y_sym).terms():
        red = reduce_mod_p(coeff / qx, p)
        if red[0]:
            out[ey - k] = red
    return out


def bfs_distance(u, v, neighbors, limit: int) -> int | None:
    """Graph distance by breadth-first search, comparing vertices with ==."""
    frontier, seen, dist = [u], [u], 0
    while dist <= limit:
        for w in frontier:
            if w == v:
                return dist
        nxt = []
        for w in frontier:
            for z in neighbors(w):
                if not any(z == s for s in seen):
                    seen.append(z)
                    nxt.append(z)
        frontier, dist = nxt, dist + 1
    return None
