"""The Bruhat-Tits tree of SL2 over F_p(x) at one place.

A vertex is the homothety class of the lattice spanned over the valuation
ring by the columns of a basis matrix; g acts by g @ basis.  Distances come
from elementary divisors, so any basis of the class will do.  Hashing uses
the canonical basis [[pi^a, beta], [0, 1]] with beta truncated below a.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache

from lftrees.errors import NotElliptic, PlaceMismatch, SingularMatrix, UnsupportedPlace
from lftrees.funcfield import RatFunc
from lftrees.sl2 import Mat2, classify
from lftrees.valuation import INF, Place, laurent_expand, val


def _min_val(M: Mat2, place: Place):
    return min(val(e, place) for e in M.entries)


@dataclass(frozen=True, eq=False)
class LatticeVertex:
    basis: Mat2
    place: Place

    def __post_init__(self):
        if self.basis.det().is_zero():
            raise SingularMatrix("lattice basis must be invertible")

    @classmethod
    def base(cls, p: int, place: Place) -> LatticeVertex:
        return cls(Mat2.identity(RatFunc.constant(1, p)), place)

    @property
    def p(self) -> int:
        return self.basis.p

    @cached_property
    def canonical(self) -> tuple[int, tuple]:
        """(a, beta terms) for the class representative [[pi^a, beta], [0, 1]]."""
        return _canonical_form(self.basis, self.place)

    def canonical_basis(self) -> Mat2:
        a, terms = self.canonical
        pi = self.place.uniformizer(self.p)
        beta = RatFunc.constant(0, self.p)
        for e, c in terms:
            beta = beta + pi ** e * c
        one = RatFunc.constant(1, self.p)
        return Mat2(pi ** a, beta, one * 0, one)

    def __eq__(self, other):
        if not isinstance(other, LatticeVertex):
            return NotImplemented
        return bt_distance(self, other) == 0

    def __hash__(self):
        if self.place.degree != 1:
            return hash(self.place)
        return hash((self.place, self.canonical))

    def __str__(self):
        if self.place.degree != 1:
            return f"lattice{self.basis}"
        a, terms = self.canonical
        pi = "(1/x)" if self.place.is_infinite else ("x" if str(self.place.pi) == "x" else f"({self.place.pi})")
        beta = " + ".join(f"{c}" if e == 0 else f"{c}*{pi}^{e}" for e, c in terms) or "0"
        return f"[[{pi}^{a}, {beta}], [0, 1]]"


def _canonical_form(M: Mat2, place: Place) -> tuple[int, tuple]:
    if place.degree != 1:
        raise UnsupportedPlace(f"canonical vertex keys need a degree-1 place, got {place}")
    p = M.p
    pi = place.uniformizer(p)
    (a11, a12), (a21, a22) = (M.m11, M.m12), (M.m21, M.m22)
    # column operations over the valuation ring: pivot on the row-2 entry of least valuation
    if val(a21, place) < val(a22, place):
        a11, a12, a21, a22 = a12, a11, a22, a21
    # now a22 != 0 (det != 0) and a21 / a22 is integral
    r = a21 / a22
    a11 = a11 - r * a12
    b = val(a22, place)
    a = val(a11, place)
    # scale columns by units, then divide by pi^b
    u2 = pi ** b / a22
    beta = a12 * u2 / pi ** b
    a -= b
    series = laurent_expand(beta, place, a)
    return a, series.key()


@dataclass(frozen=True)
class TreePath:
    vertices: tuple[LatticeVertex, ...]

    def __len__(self):
        return len(self.vertices)

    def is_geodesic(self) -> bool:
        vs = self.vertices
        return all(bt_distance(vs[i], vs[j]) == j - i for i in range(len(vs)) for j in range(i, len(vs)))


def _check_places(u: LatticeVertex, v: LatticeVertex):
    if u.place != v.place:
        raise PlaceMismatch(f"vertices at places {u.place} and {v.place}")


def bt_distance(u: LatticeVertex, v: LatticeVertex) -> int:
    _check_places(u, v)
    P = v.basis.inv() @ u.basis
    e1 = _min_val(P, u.place)
    e2 = val(P.det(), u.place) - e1
    return int(e2 - e1)


def bt_neighbors(v: LatticeVertex) -> list[LatticeVertex]:
    place = v.place
    p = v.p
    if place.degree != 1:
        raise UnsupportedPlace(f"neighbor enumeration needs a degree-1 place, got {place}")
    pi = place.uniformizer(p)
    one = RatFunc.constant(1, p)
    zero = one * 0
    out = [LatticeVertex(v.basis @ Mat2(pi, u, zero, one), place) for u in place.residue_lifts(p)]
    out.append(LatticeVertex(v.basis @ Mat2(one, zero, zero, pi), place))
    return out


def bt_act(g: Mat2, v: LatticeVertex) -> LatticeVertex:
    return LatticeVertex(g @ v.basis, v.place)


def bt_displacement(g: Mat2, v: LatticeVertex) -> int:
    return bt_distance(v, bt_act(g, v))


def bt_find_fixed_vertex(g: Mat2, place: Place, start: LatticeVertex | None = None) -> LatticeVertex:
    """Steepest descent to a vertex fixed by an elliptic g; first improving neighbor wins."""
    if classify(g, place).is_loxodromic:
        raise NotElliptic(f"{g} is loxodromic at {place}")
    v = start or LatticeVertex.base(g.p, place)
    d = bt_displacement(g, v)
    while d > 0:
        for nb in bt_neighbors(v):
            dn = bt_displacement(g, nb)
            if dn < d:
                v, d = nb, dn
                break
        else:  # cannot happen for an elliptic isometry; guards against a wrong place
            raise ArithmeticError(f"descent stalled at displacement {d}")
    return v


def bt_ball(center: LatticeVertex, radius: int) -> list[LatticeVertex]:
    """All vertices within ``radius`` of ``center``, in breadth-first order."""
    seen = {center.canonical}
    order = [center]
    frontier = deque([(center, 0)])
    while frontier:
        v, r = frontier.popleft()
        if r == radius:
            continue
        for nb in bt_neighbors(v):
            if nb.canonical not in seen:
                seen.add(nb.canonical)
                order.append(nb)
                frontier.append((nb, r + 1))
    return order


@lru_cache(maxsize=32)
def _base_ball(p: int, place: Place, radius: int) -> tuple[LatticeVertex, ...]:
    return tuple(bt_ball(LatticeVertex.base(p, place), radius))


def bt_min_displacement(g: Mat2, radius: int, place: Place, center: Mat2 | None = None) -> int:
    """Least displacement of g over the ball of the given radius.

    The ball is centred at the base vertex, or at center @ base when a
    matrix is given; displacement is conjugation invariant, so this equals
    the base-centred value for center^-1 g center.
    """
    if center is None:
        return min(bt_displacement(g, v) for v in _base_ball(g.p, place, radius))
    return min(bt_displacement(g, bt_act(center, v)) for v in _base_ball(g.p, place, radius))


def bt_path(u: LatticeVertex, v: LatticeVertex) -> TreePath:
    """The geodesic from u to v, found by greedy neighbor steps."""
    path = [u]
    d = bt_distance(u, v)
    while d > 0:
        cur = path[-1]
        for nb in bt_neighbors(cur):
            dn = bt_distance(nb, v)
            if dn == d - 1:
                path.append(nb)
                d = dn
                break
    return TreePath(tuple(path))


def bt_axis_segment(g: Mat2, radius: int, place: Place) -> TreePath:
    """A fundamental segment [v, g v] of the axis of a loxodromic g, with v in the given ball."""
    v = min(_base_ball(g.p, place, radius), key=lambda w: bt_displacement(g, w))
    return bt_path(v, bt_act(g, v))


def trace_length(g: Mat2, place: Place) -> int:
    v = val(g.trace(), place)
    return 0 if v == INF or v >= 0 else int(-2 * v)
