import json
import random

import pytest
import sympy as sp

from conftest import rand_params
from lftrees.errors import CertificationError, NotEqual, NotFound, NotNegative, NotPrime, TrivialWord
from lftrees.funcfield import RatFunc, parse_ratfunc
from lftrees.sl2 import FamilyParams, Mat2, builtin_family, matfrm_pair
from lftrees.surfaceword import SurfaceRep, evaluate
from lftrees.repcheck import (
    free_discrete_certificate,
    loxodromify,
    strict_passes,
    strict_trace_check,
    surface_rep_certificate,
    verify_matfrm_identities,
)
from lftrees.valuation import Place
from oracles import laurent_y_terms
from test_surfaceword import sympy_matrix

INF_PLACE = Place.infinity()


def test_free_certificate_odd_family():
    A, B, _, _ = matfrm_pair(builtin_family(5))
    cert = free_discrete_certificate(A, B, INF_PLACE)
    assert cert.s == -1 and cert.lengths == (2, 2, 2)


def test_free_certificate_p2_family():
    A, B, _, _ = matfrm_pair(builtin_family(2))
    cert = free_discrete_certificate(A, B)
    assert cert.s == -2 and cert.lengths == (4, 4, 4)


def test_free_certificate_rejections():
    one = RatFunc.constant(1, 5)
    I = Mat2.identity(one)
    with pytest.raises(NotNegative):
        free_discrete_certificate(I, I)
    x = RatFunc.x(5)
    # traces x + 1/x and x^2 + 1/x^2: both negative, unequal
    M, N = Mat2.diag(x, x.inv()), Mat2(x * x, one * 0, one * 0, (x * x).inv())
    with pytest.raises(NotEqual):
        free_discrete_certificate(M, N @ Mat2(one, one, one * 0, one))


@pytest.mark.parametrize("p,s", [(2, -2), (3, -1), (5, -1), (97, -1)])
def test_surface_certificate(p, s):
    cert = surface_rep_certificate(p)
    assert cert.free.s == s
    assert evaluate("abABcdCD", cert.rep).is_identity()
    doc = json.loads(json.dumps(cert.to_json()))
    assert doc["pass"] and doc["schema"] == 1 and doc["stages"]["free_discrete"]["s"] == s


def test_surface_certificate_rejects_composite():
    with pytest.raises((NotPrime, CertificationError)):
        surface_rep_certificate(4)


def test_certificate_failure_names_the_stage():
    # at the place x the odd family's traces are not all negative
    with pytest.raises(CertificationError) as info:
        surface_rep_certificate(5, Place.parse("x", 5))
    assert info.value.stage == "free_discrete"


@pytest.mark.parametrize("p", [7, 2, 3])
def test_matfrm_identities_builtin(p):
    report = verify_matfrm_identities(builtin_family(p))
    assert report["pass"]
    assert all(report["identities"].values())


@pytest.mark.parametrize("p", [3, 5])
def test_matfrm_identities_random(p):
    rng = random.Random(p)
    for _ in range(10):
        assert verify_matfrm_identities(rand_params(rng, p))["pass"]


def oracle_threshold(words, p, horizon=80):
    """Stable threshold from sympy traces and degree counting, scanning n directly."""
    rep = SurfaceRep.builtin(p)
    term_vals = []
    for w in words:
        M = sp.eye(2)
        for ch in w:
            M = M * sympy_matrix(rep.matrix(ch))
        terms = laurent_y_terms(M.trace(), p)
        term_vals.append([(l, (len(d) - 1) - (len(n) - 1)) for l, (n, d) in terms.items()])

    def passes(n):
        for tv in term_vals:
            vals = [v - l * n for l, v in tv]
            m = min(vals)
            if m >= 0 or vals.count(m) != 1:
                return False
        return True

    ok = [passes(n) for n in range(horizon)]
    n = horizon - 1
    while n > 0 and ok[n - 1]:
        n -= 1
    return n, ok.index(True)


@pytest.mark.parametrize(
    "p,words,expected",
    [
        (5, ["abAB"], 0),
        (5, ["a"], 0),
        (5, ["ac"], 0),
        (5, ["ac", "bd", "abcd"], 2),
        (2, ["abAB"], 0),
        (2, ["a"], 0),
        (2, ["ac"], 0),
        (2, ["ac", "bd", "abcd"], 3),
    ],
)
def test_loxodromify_against_scan_oracle(p, words, expected):
    res = loxodromify(words, SurfaceRep.builtin(p))
    assert (res.n, res.first_success) == oracle_threshold(words, p)
    assert res.n == expected


def test_loxodromify_commutator_valuation_odd():
    res = loxodromify(["abAB"], SurfaceRep.builtin(5))
    assert res.n == 0 and res.valuations == {"abAB": -3}


@pytest.mark.parametrize("p", [2, 5])
def test_loxodromify_is_monotone_beyond_threshold(p):
    rep = SurfaceRep.builtin(p)
    words = ["ac", "bd", "abcd"]
    res = loxodromify(words, rep)
    traces = {w: evaluate(w, rep).trace() for w in words}
    for n in range(res.n, res.n + 40):
        assert strict_passes(strict_trace_check(traces, INF_PLACE, n))
    if res.n:
        assert not strict_passes(strict_trace_check(traces, INF_PLACE, res.n - 1))


def test_bd_passes_early_then_ties():
    # a low power of y dominates at n = 0 before the top power takes over
    rep = SurfaceRep.builtin(5)
    traces = {"bd": evaluate("bd", rep).trace()}
    flags = [strict_passes(strict_trace_check(traces, INF_PLACE, n)) for n in range(4)]
    assert flags == [True, False, True, True]


def test_loxodromify_errors():
    rep = SurfaceRep.builtin(5)
    with pytest.raises(TrivialWord):
        loxodromify(["abABcdCD"], rep)
    with pytest.raises(NotFound):
        loxodromify(["ac", "bd", "abcd"], rep, n_max=1)


def test_degenerate_params_rejected_upstream():
    with pytest.raises(ValueError):
        FamilyParams.parse("1,1,1,2", 5)
    with pytest.raises(ValueError):
        FamilyParams.parse("1,x", 5)
    assert FamilyParams.parse("1,x,1/x^2,x+1", 5).d == parse_ratfunc("x^-2", 5)
