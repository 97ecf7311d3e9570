"""Certificates for the matrix pairs and the surface representations.

A pair (A, B) in SL2(F_p(x)) is certified free and discrete when tr A,
tr B, tr AB have one common negative valuation s.  The surface
certificate adds the diagonal commutator diag(Y/X, X/Y) with X^2 != Y^2
and the exact relation of the y-conjugated extension.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from lftrees.errors import CertificationError, NotEqual, NotFound, NotNegative, NotUnimodular, TrivialWord
from lftrees.funcfield import RatFunc, check_prime
from lftrees.sl2 import FamilyParams, Mat2, builtin_family, commutator, matfrm_pair, shalen_extend
from lftrees.surfaceword import SurfaceRep, amalgam_normal_form, evaluate
from lftrees.valuation import INF, GaussPlace, Place, gauss_val_strict, val

SCHEMA = 1
N_MAX = 64


def json_val(v) -> int | str:
    return "inf" if v == INF else int(v)


@dataclass(frozen=True)
class FreeCert:
    place: Place
    s: int
    lengths: tuple[int, int, int]  # A, B, AB

    def to_json(self) -> dict:
        return {
            "place": str(self.place),
            "s": self.s,
            "lengths": {"A": self.lengths[0], "B": self.lengths[1], "AB": self.lengths[2]},
        }


def free_discrete_certificate(A: Mat2, B: Mat2, place: Place | None = None) -> FreeCert:
    place = place or Place.infinity()
    if A.det() != 1 or B.det() != 1:
        raise NotUnimodular("certificate needs determinant-one matrices")
    vals = [val(M.trace(), place) for M in (A, B, A @ B)]
    names = ("tr A", "tr B", "tr AB")
    for name, v in zip(names, vals):
        if v == INF or v >= 0:
            raise NotNegative(f"v({name}) = {json_val(v)} is not negative; the element is elliptic")
    if len(set(vals)) != 1:
        detail = ", ".join(f"v({n}) = {v}" for n, v in zip(names, vals))
        raise NotEqual(f"trace valuations are negative but unequal ({detail}); uncertified")
    s = int(vals[0])
    return FreeCert(place, s, (-2 * s,) * 3)


@dataclass(frozen=True)
class SurfaceCert:
    p: int
    params: FamilyParams
    free: FreeCert
    commutator_diag: tuple[RatFunc, RatFunc]
    x_squared_ne_y_squared: bool
    rep: SurfaceRep = field(repr=False)

    def to_json(self) -> dict:
        A, B = self.rep.images["a"], self.rep.images["b"]
        return {
            "schema": SCHEMA,
            "p": self.p,
            "params": {k: str(getattr(self.params, k)) for k in ("c", "h", "d", "delta")},
            "stages": {
                "free_discrete": {"pass": True, **self.free.to_json()},
                "commutator_diagonal": {
                    "pass": True,
                    "entries": [str(e) for e in self.commutator_diag],
                },
                "non_scalar": {"pass": self.x_squared_ne_y_squared},
                "surface_relation": {"pass": True},
            },
            "matrices": {
                name: [str(e) for e in M.entries]
                for name, M in (("A", A), ("B", B), ("C", self.rep.images["c"]), ("D", self.rep.images["d"]))
            },
            "pass": True,
        }


def _stage(name: str, fn, *args):
    try:
        return fn(*args)
    except CertificationError:
        raise
    except Exception as exc:  # every failure is reported with the stage that raised it
        raise CertificationError(name, exc) from exc


def surface_rep_certificate(p: int, place: Place | None = None) -> SurfaceCert:
    check_prime(p)
    place = place or Place.infinity()
    params = _stage("builtin_family", builtin_family, p)
    A, B, X, Y = _stage("matfrm_pair", matfrm_pair, params)
    free = _stage("free_discrete", free_discrete_certificate, A, B, place)

    def diag_check():
        K = commutator(A, B)
        if not K.is_diagonal() or K.m11 != Y / X or K.m22 != X / Y:
            raise ArithmeticError(f"commutator {K} is not diag(Y/X, X/Y)")
        return K.m11, K.m22

    diag = _stage("commutator_diagonal", diag_check)

    def non_scalar():
        if X * X == Y * Y:
            raise ArithmeticError("X^2 = Y^2: the commutator is scalar")
        return True

    _stage("non_scalar", non_scalar)

    def extend():
        C, D = shalen_extend(A, B)
        return SurfaceRep({"a": A, "b": B, "c": C, "d": D}, p, provenance=f"builtin(p={p})")

    rep = _stage("surface_relation", extend)
    return SurfaceCert(p, params, free, diag, True, rep)


# -- the displayed identities of the parametric family --------------------------

def _displayed_products(params: FamilyParams) -> tuple[Mat2, Mat2]:
    c, h, d, dl = params.c, params.h, params.d, params.delta
    X, Y = params.X, params.Y
    diag = d * dl * (1 + h * h) - h
    top = (d * h * (dl * dl - 1) + dl * (d * d - 1)) / c
    low = c * (dl + d * h ** 3)
    AB = Mat2(diag / X, top / X, low / Y, diag / Y)
    BA = Mat2(diag / Y, top / Y, low / X, diag / X)
    return AB, BA


def verify_matfrm_identities(params: FamilyParams) -> dict:
    """Check every displayed identity exactly; failures are reported, not raised."""
    c, h, d, dl = params.c, params.h, params.d, params.delta
    X, Y = params.X, params.Y
    results: dict[str, bool] = {}
    try:
        A, B, _, _ = matfrm_pair(params)
    except ArithmeticError as exc:
        return {"schema": SCHEMA, "pass": False, "error": str(exc), "identities": {}}
    AB_disp, BA_disp = _displayed_products(params)
    AB, BA = A @ B, B @ A
    results["det A = 1"] = A.det() == 1
    results["det B = 1"] = B.det() == 1
    results["A entries"] = (A.m21, A.m22) == (c, d) and A.m11 == d * Y / X
    results["B entries"] = (B.m21, B.m22) == (c * h, dl) and B.m11 == dl * X / Y
    results["AB displayed"] = AB == AB_disp
    results["BA displayed"] = BA == BA_disp
    results["A = AB * B^-1"] = AB_disp @ B.inv() == A
    results["B = A^-1 * AB"] = A.inv() @ AB_disp == B
    results["tr A"] = A.trace() == d * (X + Y) / X
    results["tr B"] = B.trace() == dl * (X + Y) / Y
    results["tr AB"] = AB.trace() == (d * dl * (1 + h * h) - h) * (X + Y) / (X * Y)
    results["commutator"] = commutator(A, B) == Mat2.diag(Y / X, X / Y)
    return {
        "schema": SCHEMA,
        "p": params.p,
        "params": {k: str(getattr(params, k)) for k in ("c", "h", "d", "delta")},
        "X": str(X),
        "Y": str(Y),
        "identities": results,
        "pass": all(results.values()),
    }


# -- loxodromic substitution ------------------------------------------------------

@dataclass(frozen=True)
class LoxResult:
    n: int
    place: Place
    valuations: dict[str, int]
    first_success: int  # may precede a later failure; n is the stable threshold

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "n": self.n,
            "first_success": self.first_success,
            "place": str(self.place),
            "valuations": self.valuations,
            "pass": True,
        }


def strict_trace_check(traces: dict, place: Place, n: int) -> dict[str, tuple]:
    """word -> (value, unique) for the Gauss place with v(y) = -n."""
    gp = GaussPlace(place, -n)
    return {w: gauss_val_strict(t, gp) for w, t in traces.items()}


def strict_passes(report: dict[str, tuple]) -> bool:
    return all(u and v != INF and v < 0 for v, u in report.values())


def _crossings(terms: list[tuple[int, int]]) -> list[Fraction]:
    """n where two terms v_l - l*n of a Laurent polynomial tie."""
    out = []
    for i, (l1, v1) in enumerate(terms):
        for l2, v2 in terms[i + 1:]:
            if l1 != l2:
                out.append(Fraction(v1 - v2, l1 - l2))
    return out


def stability_horizon(trace, place: Place) -> int:
    """An n beyond which the strict check of ``trace`` no longer changes.

    Each term c_l y^l contributes the line v(c_l) - l*n, so the Gauss
    valuation is piecewise linear in n; past every crossing of these lines,
    and past the zero of the final linear piece, nothing changes.
    """
    if isinstance(trace, RatFunc) or trace.is_zero():
        return 0
    num = [(l, val(c, place)) for l, c in trace.num._t.items()]
    den = [(l, val(c, place)) for l, c in trace.den._t.items()]
    points = _crossings(num) + _crossings(den)
    (ln, vn), (ld, vd) = max(num), max(den)
    if ln != ld:
        points.append(Fraction(vn - vd, ln - ld))
    return max([0] + [math.floor(q) + 1 for q in points])


def loxodromify(words: list[str], rep: SurfaceRep, place: Place | None = None, n_max: int = N_MAX) -> LoxResult:
    """Smallest n <= n_max such that every trace is strictly negative under
    v(y) = -n' for all n' >= n.

    Replacing y by y*pi^-n (pi the uniformizer; y*x^n at infinity) moves
    v(y) to -n, so these are the traces after the substitution.  The first n that passes can be
    followed by failures (a low y-power dominating first), so the search
    runs up to a horizon past which the check is constant.
    """
    place = place or Place.infinity()
    traces = {}
    for w in words:
        if amalgam_normal_form(w).is_identity:
            raise TrivialWord(f"word {w!r} is trivial in the surface group")
        traces[w] = evaluate(w, rep).trace()
    horizon = max([0] + [stability_horizon(t, place) for t in traces.values()])
    reports = [strict_trace_check(traces, place, n) for n in range(horizon + 1)]
    ok = [strict_passes(r) for r in reports]
    if not ok[-1]:
        diag = ", ".join(f"{w}: v={json_val(v)} unique={u}" for w, (v, u) in reports[-1].items())
        raise NotFound(f"the strict check fails for every n >= {horizon} ({diag})")
    n = horizon
    while n > 0 and ok[n - 1]:
        n -= 1
    if n > n_max:
        raise NotFound(f"stable threshold {n} exceeds n_max = {n_max}")
    return LoxResult(n, place, {w: int(v) for w, (v, _) in reports[n].items()}, ok.index(True))
