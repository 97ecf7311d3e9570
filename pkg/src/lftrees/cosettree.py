"""Coset-construction trees for three ascending HNN extensions.

* ``lamp``: F wr Z = (sum of F_j) x| <t> with t x_j t^-1 = x_{j+1}, on two trees.
* ``lamp2``: F wr Z^2 with s, t shifting columns and rows, on four trees.
* ``houghton``: H_2 = FSym(Z) x| <t>, t(n) = n - 1, on two locally infinite trees.

Every tree comes from a chain of subgroups G_i of the base group B with
t G_i t^-1 = G_{i +- 1}.  A vertex is a pair (level i, coset b G_i) with b in B,
and g = b' t^m acts by (i, b G_i) -> (i + delta, b' (t^m b t^-m) G_{i + delta}).
A coset b G_i is stored by the part of b that G_i cannot change: the labels
beyond the level for the lamplighters, the values on the points beyond the
level for Houghton.  The shift of a Houghton element lives in the level.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Union

from lftrees.errors import FamilyMismatch, ParseError

INFINITE = math.inf

# -- finite label groups ---------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    """Elements 0..n-1 with 0 the identity; ``cyclic`` means label k is generator^k."""

    name: str
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    cyclic: bool = False

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(0)

    @classmethod
    def cyclic_group(cls, n: int) -> FiniteGroup:
        if n < 2:
            raise ValueError("cyclic label group needs order >= 2")
        table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        return cls(f"C{n}", table, tuple(str(k) for k in range(n)), cyclic=True)

    @classmethod
    def symmetric3(cls) -> FiniteGroup:
        perms = list(itertools.permutations(range(3)))  # identity first
        index = {q: i for i, q in enumerate(perms)}
        table = tuple(
            tuple(index[tuple(a[b[k]] for k in range(3))] for b in perms) for a in perms
        )
        return cls("S3", table, tuple(_perm3_name(q) for q in perms))

    @classmethod
    def parse(cls, name: str) -> FiniteGroup:
        s = name.strip().upper()
        if s == "S3":
            return cls.symmetric3()
        m = re.fullmatch(r"C(\d+)", s)
        if m:
            return cls.cyclic_group(int(m.group(1)))
        raise ParseError(f"unknown label group {name!r}; expected Cn or S3")

    def label_index(self, text: str) -> int:
        if text in self.labels:
            return self.labels.index(text)
        raise ParseError(f"{text!r} is not an element of {self.name}")


def _perm3_name(q: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for s in range(3):
        if s in seen or q[s] == s:
            continue
        cyc, k = [], s
        while k not in seen:
            seen.add(k)
            cyc.append(k)
            k = q[k]
        parts.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(parts) or "e"


C2 = FiniteGroup.cyclic_group(2)

# -- finitely supported functions -----------------------------------------------

Support = tuple  # sorted tuple of (position, label) with label != identity


def _norm(d: dict) -> Support:
    return tuple(sorted((k, v) for k, v in d.items() if v != 0))


def _shift_pos(pos, delta):
    if isinstance(pos, tuple):
        return (pos[0] + delta[0], pos[1] + delta[1])
    return pos + delta


def _mul_funcs(F: FiniteGroup, f: Support, g: Support) -> dict:
    out = dict(f)
    for pos, lab in g:
        out[pos] = F.mul(out.get(pos, 0), lab)
    return out


def _shifted(f: Support, delta) -> Support:
    return tuple(sorted((_shift_pos(p, delta), lab) for p, lab in f))


# -- elements -------------------------------------------------------------------


@dataclass(frozen=True)
class LampElem:
    """f t^k in F wr Z."""

    support: Support = ()
    shift: int = 0
    F: FiniteGroup = C2

    family = "lamp"

    def __mul__(self, o: LampElem) -> LampElem:
        _same_group(self, o)
        f = _mul_funcs(self.F, self.support, _shifted(o.support, self.shift))
        return LampElem(_norm(f), self.shift + o.shift, self.F)

    def inv(self) -> LampElem:
        f = {p: self.F.inv(lab) for p, lab in self.support}
        return LampElem(_shifted(_norm(f), -self.shift), -self.shift, self.F)

    def is_identity(self) -> bool:
        return not self.support and self.shift == 0

    def __str__(self):
        return _format_lamp(self.support, {"t": self.shift}, self.F)


@dataclass(frozen=True)
class Lamp2Elem:
    """f s^m t^n in F wr Z^2; s moves column i to i + 1, t moves row j to j + 1."""

    support: Support = ()
    shift: tuple[int, int] = (0, 0)
    F: FiniteGroup = C2

    family = "lamp2"

    def __mul__(self, o: Lamp2Elem) -> Lamp2Elem:
        _same_group(self, o)
        f = _mul_funcs(self.F, self.support, _shifted(o.support, self.shift))
        return Lamp2Elem(_norm(f), (self.shift[0] + o.shift[0], self.shift[1] + o.shift[1]), self.F)

    def inv(self) -> Lamp2Elem:
        f = {p: self.F.inv(lab) for p, lab in self.support}
        neg = (-self.shift[0], -self.shift[1])
        return Lamp2Elem(_shifted(_norm(f), neg), neg, self.F)

    def is_identity(self) -> bool:
        return not self.support and self.shift == (0, 0)

    def __str__(self):
        return _format_lamp(self.support, {"s": self.shift[0], "t": self.shift[1]}, self.F)


@dataclass(frozen=True)
class HoughtonElem:
    """sigma t^k acting on Z by n -> sigma(n - k); ``perm`` lists (n, sigma(n)) for moved n."""

    perm: Support = ()
    shift: int = 0

    family = "houghton"

    def __post_init__(self):
        moved = dict(self.perm)
        if sorted(moved) != sorted(moved.values()) or any(k == v for k, v in moved.items()):
            raise ValueError(f"{self.perm} is not a finitary permutation table")

    def __call__(self, n: int) -> int:
        return dict(self.perm).get(n - self.shift, n - self.shift)

    def __mul__(self, o: HoughtonElem) -> HoughtonElem:
        # sigma t^k tau t^-k moves n - k to tau(n) - k
        a = dict(self.perm)
        b = {n - self.shift: m - self.shift for n, m in o.perm}
        pts = set(a) | set(b)
        comp = {n: a.get(b.get(n, n), b.get(n, n)) for n in pts}
        return HoughtonElem(_norm_perm(comp), self.shift + o.shift)

    def inv(self) -> HoughtonElem:
        # (sigma t^k)^-1 = t^-k sigma^-1 = (t^-k sigma^-1 t^k) t^-k
        return HoughtonElem(_norm_perm({m + self.shift: n + self.shift for n, m in self.perm}), -self.shift)

    def is_identity(self) -> bool:
        return not self.perm and self.shift == 0

    def cycles(self) -> list[tuple[int, ...]]:
        moved = dict(self.perm)
        seen, out = set(), []
        for s in sorted(moved):
            if s in seen:
                continue
            cyc, k = [], s
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = moved[k]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles()]
        if self.shift:
            parts.append("t" if self.shift == 1 else f"t^{self.shift}")
        return " ".join(parts) or "1"


def _norm_perm(d: dict) -> Support:
    return tuple(sorted((k, v) for k, v in d.items() if k != v))


Element = Union[LampElem, Lamp2Elem, HoughtonElem]


def _same_group(a, b):
    if type(a) is not type(b):
        raise FamilyMismatch(f"cannot combine {a.family} and {b.family} elements")
    if a.F != b.F:
        raise FamilyMismatch(f"label groups {a.F.name} and {b.F.name} differ")


def _format_label(F: FiniteGroup, lab: int) -> str:
    if F.cyclic:
        return "" if lab == 1 else f"^{lab}"
    return f"@{F.labels[lab]}"


def _format_pos(pos) -> str:
    return f"{pos[0]},{pos[1]}" if isinstance(pos, tuple) else str(pos)


def _format_lamp(support: Support, shifts: dict[str, int], F: FiniteGroup) -> str:
    parts = [f"x[{_format_pos(p)}]{_format_label(F, lab)}" for p, lab in support]
    for name, k in shifts.items():
        if k:
            parts.append(name if k == 1 else f"{name}^{k}")
    return " ".join(parts) or "1"


# -- parsing --------------------------------------------------------------------

_LAMP_TOKEN = re.compile(
    r"\s*(?:x\[\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?\](?:\^(-?\d+)|@(\S+?)(?=\s|$))?|([st])(?:\^(-?\d+))?|(1))"
)
_CYCLE = re.compile(r"\s*(?:\(([-\d\s]+)\)|t(?:\^(-?\d+))?|(1))")


def identity(family: str, F: FiniteGroup = C2) -> Element:
    if family == "lamp":
        return LampElem((), 0, F)
    if family == "lamp2":
        return Lamp2Elem((), (0, 0), F)
    if family == "houghton":
        return HoughtonElem()
    raise FamilyMismatch(f"unknown family {family!r}")


def parse_element(text: str, family: str, F: FiniteGroup = C2) -> Element:
    """Parse "x[-1] x[0] t^2", "x[0,1]^2 s t^-1", "x[0]@(01)" or "(1 2)(0 3) t^2"."""
    result = identity(family, F)
    pos = 0
    text = text.rstrip()
    pattern = _CYCLE if family == "houghton" else _LAMP_TOKEN
    while pos < len(text):
        m = pattern.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError("unexpected input in element", pos, text)
        result = result * _token_element(m, family, F, text)
        pos = m.end()
    return result


def _token_element(m: re.Match, family: str, F: FiniteGroup, text: str) -> Element:
    if family == "houghton":
        if m.group(1) is not None:
            pts = [int(s) for s in m.group(1).split()]
            if len(set(pts)) != len(pts):
                raise ParseError("repeated point in cycle", m.start(), text)
            table = {pts[i]: pts[(i + 1) % len(pts)] for i in range(len(pts))}
            return HoughtonElem(_norm_perm(table))
        if m.group(3):
            return HoughtonElem()
        return HoughtonElem((), int(m.group(2) or 1))
    i, j, power, name, gen, gpow, one = m.groups()
    if one:
        return identity(family, F)
    if gen is not None:
        k = int(gpow or 1)
        if family == "lamp":
            if gen != "t":
                raise ParseError("the lamplighter family has only the shift t", m.start(), text)
            return LampElem((), k, F)
        return Lamp2Elem((), (k, 0) if gen == "s" else (0, k), F)
    if (j is None) != (family == "lamp"):
        raise ParseError(f"wrong number of coordinates for family {family}", m.start(), text)
    if name is not None:
        lab = F.label_index(name)
    else:
        if not F.cyclic and power is not None:
            raise ParseError(f"use x[..]@name for labels in {F.name}", m.start(), text)
        lab = int(power or 1) % F.order if F.cyclic else 1
    posn = int(i) if family == "lamp" else (int(i), int(j))
    sup = _norm({posn: lab})
    return LampElem(sup, 0, F) if family == "lamp" else Lamp2Elem(sup, (0, 0), F)


# -- trees and vertices -----------------------------------------------------------

TREE_COUNT = {"lamp": 2, "lamp2": 4, "houghton": 2}


@dataclass(frozen=True)
class TreeSpec:
    """One tree of a family: the coordinate the chain truncates and which side is kept."""

    family: str
    tree: int

    def __post_init__(self):
        if self.family not in TREE_COUNT:
            raise FamilyMismatch(f"unknown family {self.family!r}")
        if not 1 <= self.tree <= TREE_COUNT[self.family]:
            raise ValueError(f"family {self.family} has trees 1..{TREE_COUNT[self.family]}")

    @property
    def upper(self) -> bool:
        """True when the key keeps coordinates above the level."""
        return self.tree % 2 == 1

    @property
    def axis(self) -> int:
        """lamp2: 0 for the column trees (1, 2), 1 for the row trees (3, 4)."""
        return 0 if self.tree <= 2 else 1

    def beyond(self, pos, level: int) -> bool:
        c = pos[self.axis] if isinstance(pos, tuple) else pos
        return c > level if self.upper else c < level

    def level_delta(self, g: Element) -> int:
        if self.family == "houghton":
            return -g.shift
        if self.family == "lamp2":
            return g.shift[self.axis]
        return g.shift

    def describe(self) -> str:
        if self.family == "lamp2":
            gen = "s" if self.axis == 0 else "t"
            coord = "columns" if self.axis == 0 else "rows"
            return f"tree {self.tree}: {coord} {'>' if self.upper else '<'} level, moved by {gen}"
        return f"tree {self.tree}: positions {'>' if self.upper else '<'} level"


@dataclass(frozen=True)
class CosetVertex:
    family: str
    tree: int
    level: int
    key: Support = ()

    @property
    def spec(self) -> TreeSpec:
        return TreeSpec(self.family, self.tree)

    def key_string(self, F: FiniteGroup = C2) -> str:
        if self.family == "houghton":
            return "{" + ", ".join(f"{n}->{m}" for n, m in self.key) + "}"
        return _format_lamp(self.key, {}, F) if self.key else "{}"

    def __str__(self):
        return f"({self.tree}, {self.level}, {self.key_string()})"


def base_vertex(family: str, tree: int, level: int = 0) -> CosetVertex:
    TreeSpec(family, tree)
    return CosetVertex(family, tree, level, ())


def ct_build_four_trees() -> tuple[TreeSpec, ...]:
    """The +s, -s, +t, -t trees of F wr Z^2."""
    return tuple(TreeSpec("lamp2", k) for k in (1, 2, 3, 4))


def ct_act(g: Element, v: CosetVertex) -> CosetVertex:
    if g.family != v.family:
        raise FamilyMismatch(f"{g.family} element cannot act on a {v.family} tree")
    spec = v.spec
    level = v.level + spec.level_delta(g)
    if v.family == "houghton":
        return CosetVertex(v.family, v.tree, level, _houghton_key(g, v.key, level, spec))
    f = _mul_funcs(g.F, g.support, _shifted(v.key, g.shift))
    key = tuple((p, lab) for p, lab in _norm(f) if spec.beyond(p, level))
    return CosetVertex(v.family, v.tree, level, key)


def _houghton_key(g: HoughtonElem, key: Support, level: int, spec: TreeSpec) -> Support:
    # the new coset map is n -> g(kappa(n + k)) on the kept side of the new level
    kappa = dict(key)
    candidates = {n - g.shift for n in kappa} | {n for n, _ in g.perm}
    out = {}
    for n in candidates:
        if spec.beyond(n, level):
            m = g(kappa.get(n + g.shift, n + g.shift))
            if m != n:
                out[n] = m
    return tuple(sorted(out.items()))


def adjacent(u: CosetVertex, v: CosetVertex) -> bool:
    """Levels i, i +- 1 with the finer key truncating to the coarser one."""
    if (u.family, u.tree) != (v.family, v.tree) or abs(u.level - v.level) != 1:
        return False
    hi, lo = (u, v) if u.level > v.level else (v, u)
    fine, coarse = (lo, hi) if u.spec.upper else (hi, lo)
    return tuple(kv for kv in fine.key if fine.spec.beyond(kv[0], coarse.level)) == coarse.key


# -- classification ---------------------------------------------------------------


@dataclass(frozen=True)
class CosetClassification:
    kind: str  # "elliptic" | "loxodromic"
    length: int
    witness: CosetVertex | None = None

    @property
    def is_loxodromic(self) -> bool:
        return self.kind == "loxodromic"


def _support_points(g: Element) -> list:
    return [n for n, _ in g.perm] if g.family == "houghton" else [p for p, _ in g.support]


def ct_classify(g: Element, tree: int | TreeSpec) -> CosetClassification:
    spec = tree if isinstance(tree, TreeSpec) else TreeSpec(g.family, tree)
    if spec.family != g.family:
        raise FamilyMismatch(f"{g.family} element cannot act on a {spec.family} tree")
    delta = spec.level_delta(g)
    if delta:
        return CosetClassification("loxodromic", abs(delta))
    coords = [p[spec.axis] if isinstance(p, tuple) else p for p in _support_points(g)]
    level = (max(coords) if spec.upper else min(coords)) if coords else 0
    witness = CosetVertex(g.family, spec.tree, level, ())
    if ct_act(g, witness) != witness:
        raise ArithmeticError(f"computed witness {witness} is not fixed by {g}")
    return CosetClassification("elliptic", 0, witness)


def ct_valence(v: CosetVertex | TreeSpec, F: FiniteGroup = C2) -> int | float:
    """|F| + 1 on the lamplighter trees; the other families have infinite index steps."""
    return F.order + 1 if v.family == "lamp" else INFINITE


# -- stabilisers --------------------------------------------------------------------

Window = Union[tuple[int, int], tuple[tuple[int, int], tuple[int, int]]]


def _shift_candidates(family: str, bound: int):
    r = range(-bound, bound + 1)
    return list(itertools.product(r, r)) if family == "lamp2" else list(r)


def _window_positions(family: str, window: Window) -> list:
    if family == "lamp2":
        (a, b), (c, d) = window
        return [(i, j) for i in range(a, b + 1) for j in range(c, d + 1)]
    lo, hi = window
    return list(range(lo, hi + 1))


def _probe(family: str, shift, F: FiniteGroup) -> Element:
    if family == "lamp":
        return LampElem((), shift, F)
    if family == "lamp2":
        return Lamp2Elem((), shift, F)
    return HoughtonElem((), shift)


def _forced_labels(vertices, shift, F: FiniteGroup):
    """Labels that g = f * shift must carry beyond each level, or None if inconsistent."""
    forced: dict = {}
    for v in vertices:
        spec = v.spec
        moved = dict(_shifted(v.key, shift))
        want = dict(v.key)
        for pos in set(moved) | set(want):
            if spec.beyond(pos, v.level):
                lab = F.mul(want.get(pos, 0), F.inv(moved.get(pos, 0)))
                if forced.setdefault(pos, lab) != lab:
                    return None
    return forced


def _lamp_candidates(vertices, shift, positions, F: FiniteGroup):
    forced = _forced_labels(vertices, shift, F)
    if forced is None:
        return
    inside = set(positions)
    if any(lab and pos not in inside for pos, lab in forced.items()):
        return
    pinned = [p for p in positions if any(v.spec.beyond(p, v.level) for v in vertices)]
    free = [p for p in positions if p not in set(pinned)]
    fixed = {p: forced.get(p, 0) for p in pinned}
    for labels in itertools.product(range(F.order), repeat=len(free)):
        f = dict(fixed)
        f.update(zip(free, labels))
        yield _norm(f)


def _houghton_candidates(vertices, positions):
    # with zero shift, g must fix every point in the image of a key's kept side
    pinned = set()
    for v in vertices:
        kappa = dict(v.key)
        for n in positions:
            pre = [m for m, im in kappa.items() if im == n]
            source = pre[0] if pre else (n if n not in kappa else None)
            if source is not None and v.spec.beyond(source, v.level):
                pinned.add(n)
    free = [n for n in positions if n not in pinned]
    for images in itertools.permutations(free):
        yield _norm_perm(dict(zip(free, images)))


def ct_stabiliser_enum(
    vertices: list[CosetVertex],
    window: Window,
    shift_bound: int,
    F: FiniteGroup = C2,
) -> list[Element]:
    """Every element with support in the window and |shift| <= bound fixing all vertices.

    Candidates are pruned to shifts preserving every level and to supports
    avoiding positions whose label (or point) is pinned by a vertex key;
    each candidate is then checked with ct_act.
    """
    if not vertices:
        raise ValueError("need at least one vertex")
    family = vertices[0].family
    if any(v.family != family for v in vertices):
        raise FamilyMismatch("vertices from different families")
    positions = _window_positions(family, window)
    found: list[Element] = []
    for shift in _shift_candidates(family, shift_bound):
        probe = _probe(family, shift, F)
        if any(v.spec.level_delta(probe) for v in vertices):
            continue
        if family == "houghton":
            cands = (HoughtonElem(p, shift) for p in _houghton_candidates(vertices, positions))
        else:
            cls = LampElem if family == "lamp" else Lamp2Elem
            cands = (cls(s, shift, F) for s in _lamp_candidates(vertices, shift, positions, F))
        for g in cands:
            if all(ct_act(g, v) == v for v in vertices):
                found.append(g)
    found.sort(key=_order_key)
    return found


def _order_key(g: Element):
    sup = g.perm if g.family == "houghton" else g.support
    return (g.shift, sup)


def all_elements(family: str, window: Window, shift_bound: int, F: FiniteGroup = C2):
    """Every element with support in the window and bounded shift (brute force)."""
    positions = _window_positions(family, window)
    for shift in _shift_candidates(family, shift_bound):
        if family == "houghton":
            for images in itertools.permutations(positions):
                yield HoughtonElem(_norm_perm(dict(zip(positions, images))), shift)
        else:
            cls = LampElem if family == "lamp" else Lamp2Elem
            for labels in itertools.product(range(F.order), repeat=len(positions)):
                yield cls(_norm(dict(zip(positions, labels))), shift, F)


# -- random sampling --------------------------------------------------------------


def random_element(family: str, rng, window: Window, shift_bound: int, F: FiniteGroup = C2, density: float = 0.4):
    positions = _window_positions(family, window)
    shift = rng.choice(_shift_candidates(family, shift_bound))
    if family == "houghton":
        pts = [n for n in positions if rng.random() < density]
        images = pts[:]
        rng.shuffle(images)
        return HoughtonElem(_norm_perm(dict(zip(pts, images))), shift)
    f = {p: rng.randrange(1, F.order) if F.order > 1 else 0 for p in positions if rng.random() < density}
    cls = LampElem if family == "lamp" else Lamp2Elem
    return cls(_norm(f), shift, F)


def random_vertex(family: str, tree: int, rng, window: Window, level_bound: int, F: FiniteGroup = C2) -> CosetVertex:
    """g . (level 0 base vertex) for a random g, so the key is a genuine coset key."""
    g = random_element(family, rng, window, level_bound, F)
    return ct_act(g, base_vertex(family, tree, 0))
