import random

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conftest import PRIMES, rand_birat, rand_params, rand_ratfunc
from lftrees.errors import DegenerateXY, NotPrime, SingularMatrix, ZeroParameter
from lftrees.funcfield import BiRat, RatFunc, parse_birat, parse_ratfunc
from lftrees.sl2 import (
    FamilyParams,
    Mat2,
    builtin_family,
    classify,
    commutator,
    matfrm_pair,
    shalen_extend,
)
from lftrees.valuation import GaussPlace, Place, val
from oracles import matfrm_symbolic, same_ratfunc, to_sympy, x_sym

INF_PLACE = Place.infinity()
ODD_PRIMES = [3, 5, 7, 11, 13, 97]

# reference matrices for the odd-characteristic representation
ODD_A = ("(1-2*x^2-2*x^3)/(x*(x-1))", "(-1+2*x^2+x^3+x^4)/(x^3*(x-1))", "1", "1/x^2")
ODD_B = ("(x^2-1)/(x-2*x^3-2*x^4)", "(1+2*x-x^2-3*x^3-2*x^4)/(x^2*(2*x^3+2*x^2-1))", "x", "1+x")
ODD_D = ("(1-2*x^2-2*x^3)/(x*(x-1))", "(-1+2*x^2+x^3+x^4)/(y*x^3*(x-1))", "y", "1/x^2")
ODD_C = ("(x^2-1)/(x-2*x^3-2*x^4)", "(1+2*x-x^2-3*x^3-2*x^4)/(y*x^2*(2*x^3+2*x^2-1))", "y*x", "1+x")

# reference matrices for the characteristic-two representation
P2_A = (
    "(x^8+x^7+x^5+x^4+x^3)/(x^6+x^5+1)",
    "(x^13+x^11+x^2+x+1)/((x^6+x^5+1)*(x^5+1)*(x^2+x+1))",
    "1",
    "x^3/((x^5+1)*(x^2+x+1))",
)
P2_B = (
    "(x^8+x^7+x^2)/((x^7+x^2+1)*(x^5+1))",
    "(x^12+x^10+x^9+x^5+x^4+x^2+1)/((x^7+x^2+1)*(x^5+1)*(x^2+x+1))",
    "x^2+x+1",
    "x^2",
)


def displayed(entries, p):
    return Mat2(*(parse_birat(e, p) for e in entries))


def test_mat2_basics():
    p = 5
    I = Mat2.identity(RatFunc.constant(1, p))
    assert I.trace() == 2 and I.is_identity()
    x = RatFunc.x(p)
    M = Mat2(x, RatFunc.constant(1, p), RatFunc.constant(0, p), x.inv())
    assert commutator(M, M).is_identity()
    assert (M @ M.inv()).is_identity()
    assert (M ** -3 @ M ** 3).is_identity()
    with pytest.raises(SingularMatrix):
        Mat2(x, x, x, x).inv()


@settings(max_examples=30)
@given(st.sampled_from(PRIMES), st.integers(0, 2**32 - 1))
def test_mat2_group_laws(p, seed):
    rng = random.Random(seed)
    y = BiRat.y(p)
    entry = lambda: BiRat.lift(rand_ratfunc(rng, p, 2)) * y ** rng.randint(-1, 1)  # noqa: E731
    a, b, c = (Mat2(entry(), entry(), entry(), entry()) for _ in range(3))
    assert (a @ b) @ c == a @ (b @ c)
    assert (a @ b).det() == a.det() * b.det()
    assert (a @ b).trace() == (b @ a).trace()


@pytest.mark.parametrize("p", ODD_PRIMES)
def test_odd_family_against_displayed_matrices(p):
    A, B, X, Y = matfrm_pair(builtin_family(p))
    C, D = shalen_extend(A, B)
    A, B = A.map(BiRat.lift), B.map(BiRat.lift)
    shown_A, shown_D = displayed(ODD_A, p), displayed(ODD_D, p)
    assert B == displayed(ODD_B, p)
    assert C == displayed(ODD_C, p)
    for got, shown in ((A, shown_A), (D, shown_D)):
        assert (got.m11, got.m21, got.m22) == (shown.m11, shown.m21, shown.m22)
        # the reference top-right entry has the opposite sign; det = 1 forces the negation
        assert got.m12 == -shown.m12
        assert shown.det() != 1 and got.det() == 1
    assert val(X, INF_PLACE) == 1 and val(Y, INF_PLACE) == -2
    for M in (A, B, A @ B):
        assert val(M.trace().to_ratfunc(), INF_PLACE) == -1


def test_p2_family_reproduces_displayed_matrices():
    params = builtin_family(2)
    A, B, X, Y = matfrm_pair(params)
    assert A.map(BiRat.lift) == displayed(P2_A, 2)
    assert B.map(BiRat.lift) == displayed(P2_B, 2)
    v = lambda f: val(f, INF_PLACE)  # noqa: E731
    assert (v(params.d), v(params.delta), v(params.h)) == (4, -2, -2)
    assert v(params.d * params.delta * params.h + 1) == 5
    assert (v(X), v(Y)) == (4, -2)
    assert [v(M.trace()) for M in (A, B, A @ B)] == [-2, -2, -2]


def test_builtin_parameters():
    odd = builtin_family(7)
    assert (odd.c, odd.h, odd.d, odd.delta) == tuple(parse_ratfunc(s, 7) for s in ("1", "x", "1/x^2", "x+1"))
    with pytest.raises(NotPrime):
        builtin_family(9)


def test_parameter_preconditions():
    f = lambda s: parse_ratfunc(s, 5)  # noqa: E731
    with pytest.raises(ZeroParameter):
        FamilyParams(c=f("0"), h=f("x"), d=f("x"), delta=f("x"))
    # d = h = 1 makes X = 1 - delta + 1 vanish at delta = 2
    with pytest.raises(DegenerateXY):
        FamilyParams(c=f("1"), h=f("1"), d=f("1"), delta=f("2"))


@pytest.mark.parametrize("p", [3, 5, 2])
def test_commutator_is_diagonal(p):
    A, B, X, Y = matfrm_pair(builtin_family(p))
    comm = commutator(A, B)
    assert comm == Mat2.diag(Y / X, X / Y)
    C, D = shalen_extend(A, B)
    assert commutator(D, C) == commutator(A, B).map(BiRat.lift)


@settings(max_examples=12)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 2**32 - 1))
def test_family_matches_symbolic_oracle(p, seed):
    params = rand_params(random.Random(seed), p, maxdeg=1)
    A, B, X, Y = matfrm_pair(params)
    sA, sB, sX, sY = matfrm_symbolic(*(to_sympy(getattr(params, n)) for n in ("c", "h", "d", "delta")))
    assert same_ratfunc(X, sX, p) and same_ratfunc(Y, sY, p)
    AB, sAB = A @ B, sA * sB
    for got, want in zip(A.entries + B.entries + AB.entries, list(sA) + list(sB) + list(sAB)):
        assert same_ratfunc(got, want, p)
    assert same_ratfunc(commutator(A, B).m11, sY / sX, p)


@pytest.mark.parametrize("p", PRIMES)
def test_family_identities_random(p):
    rng = random.Random(p)
    for _ in range(20):
        params = rand_params(rng, p)
        A, B, X, Y = matfrm_pair(params)
        assert A.det() == 1 and B.det() == 1
        assert commutator(A, B) == Mat2.diag(Y / X, X / Y)


def test_classify_examples():
    p = 5
    one = RatFunc.constant(1, p)
    assert classify(Mat2.identity(one), INF_PLACE).kind == "elliptic"
    assert classify(Mat2.identity(RatFunc.constant(1, 2)), INF_PLACE).kind == "elliptic"
    x = RatFunc.x(p)
    c = classify(Mat2.diag(x, x.inv()), Place.parse("x", p))
    assert (c.kind, c.length) == ("loxodromic", 2)
    A, _, _, _ = matfrm_pair(builtin_family(p))
    c = classify(A, INF_PLACE)
    assert (c.kind, c.length) == ("loxodromic", 2)


def test_classify_y_dependent_trace_needs_gauss_place():
    p = 5
    A, B, _, _ = matfrm_pair(builtin_family(p))
    C, _ = shalen_extend(A, B)
    AC = A.map(BiRat.lift) @ C
    with pytest.raises(ValueError):
        classify(AC, INF_PLACE)
    assert classify(AC, GaussPlace(INF_PLACE, -5)).is_loxodromic


def test_symbolic_oracle_identity_over_q():
    # the displayed identities are polynomial identities, so they hold over Q(c,h,d,delta) too
    c, h, d, dl = sp.symbols("c h d delta")
    A, B, X, Y = matfrm_symbolic(c, h, d, dl)
    assert sp.simplify(A.det() - 1) == 0 and sp.simplify(B.det() - 1) == 0
    comm = sp.simplify(A * B * A.inv() * B.inv())
    assert sp.simplify(comm - sp.diag(Y / X, X / Y)) == sp.zeros(2)
    assert sp.simplify((A * B).trace() - (d * dl * (1 + h**2) - h) * (X + Y) / (X * Y)) == 0
