"""Fast exhaustive checks of short words by specialising (x, y) into F_q.

A ring homomorphism F_p[x]_S[y, 1/y] -> F_q (x -> a, y -> b) exists as soon
as no denominator of a generator entry vanishes at a and b != 0.  If the
image of a word is not the identity, neither is the word's exact image; only
the words whose image *is* the identity need exact evaluation.

F_q is held in Zech-logarithm form so that whole levels of the word tree
are multiplied with numpy at once.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np
from flint import fmpz, nmod_poly

from lftrees.funcfield import BiRat, RatFunc
from lftrees.surfaceword import LETTERS, SurfaceRep, evaluate, push_letter


def _prime_factors(n: int) -> list[int]:
    return [int(r) for r, _ in fmpz(n).factor()]


def _find_primitive(p: int, k: int, rng: random.Random) -> nmod_poly:
    q = p ** k
    cofactors = [(q - 1) // r for r in _prime_factors(q - 1)]
    x = nmod_poly([0, 1], p)
    while True:
        f = nmod_poly([rng.randrange(p) for _ in range(k)] + [1], p)
        _, factors = f.factor()
        if len(factors) != 1 or factors[0][1] != 1:
            continue
        if all(x.pow_mod(c, f) != 1 for c in cofactors):
            return f


class GF:
    """F_{p^k} with elements as discrete logs; ``zero`` is the sentinel q - 1."""

    def __init__(self, p: int, k: int, seed: int = 0):
        self.p, self.k = p, k
        self.q = p ** k
        self.n = self.q - 1  # multiplicative order
        self.zero = self.n
        self.modulus = _find_primitive(p, k, random.Random(seed))
        digits = self._power_digits()
        weights = np.array([p ** i for i in range(k)], dtype=np.int64)
        enc = digits @ weights
        self.log = np.full(self.q, self.zero, dtype=np.int64)
        self.log[enc] = np.arange(self.n, dtype=np.int64)
        self.enc = enc
        # Zech logarithm: alpha^z = 1 + alpha^n
        plus_one = np.where(digits[:, 0] < p - 1, enc + 1, enc - (p - 1))
        self.zech = self.log[plus_one]
        self.minus_one = 0 if p == 2 else self.n // 2

    def _power_digits(self) -> np.ndarray:
        """Row n holds the coefficients of alpha^n = x^n mod f, lowest first."""
        p, k, f = self.p, self.k, self.modulus
        table = np.zeros((self.n, k), dtype=np.float64)
        table[0, 0] = 1
        m = 1
        while m < self.n:
            step = min(m, self.n - m)
            # rows of M are the coefficient vectors of x^(m + i) mod f
            M = np.zeros((k, k), dtype=np.float64)
            c = nmod_poly([0, 1], p).pow_mod(m, f)
            for i in range(k):
                coeffs = [int(v) for v in c.coeffs()]
                M[i, : len(coeffs)] = coeffs
                c = (c * nmod_poly([0, 1], p)) % f
            # entries stay below k * p^2, so float64 products are exact
            table[m:m + step] = np.mod(table[:step] @ M, p)
            m += step
        return table.astype(np.int64)

    # scalar helpers (logs as Python ints)
    def from_int(self, c: int) -> int:
        return int(self.log[c % self.p])

    def s_mul(self, a: int, b: int) -> int:
        return self.zero if self.zero in (a, b) else (a + b) % self.n

    def s_add(self, a: int, b: int) -> int:
        if a == self.zero:
            return b
        if b == self.zero:
            return a
        z = int(self.zech[(b - a) % self.n])
        return self.zero if z == self.zero else (a + z) % self.n

    def s_inv(self, a: int) -> int:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in F_q")
        return (-a) % self.n

    # vector operations
    def mul(self, a: np.ndarray, b) -> np.ndarray:
        out = (a + b) % self.n
        return np.where((a == self.zero) | (b == self.zero), self.zero, out)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        z = self.zech[(b - a) % self.n]
        s = np.where(z == self.zero, self.zero, (a + z) % self.n)
        s = np.where(a == self.zero, b, s)
        return np.where(b == self.zero, a, s)


def default_degree(p: int) -> int:
    """k with p^k around 2^20."""
    k = 1
    while p ** (k + 1) <= 1 << 21:
        k += 1
    return k


@dataclass
class Specialization:
    """x -> alpha^a_log, y -> alpha^b_log, with generator images as 4-tuples of logs."""

    field: GF
    a_log: int
    b_log: int
    images: dict[str, tuple[int, int, int, int]] = field(default_factory=dict)


def _eval_poly(F: GF, coeffs: list[int], a: int) -> int:
    acc = F.zero
    for c in reversed(coeffs):
        acc = F.s_add(F.s_mul(acc, a), F.from_int(c))
    return acc


def _eval_ratfunc(F: GF, f: RatFunc, a: int) -> int | None:
    den = _eval_poly(F, f.den.coeffs, a)
    if den == F.zero:
        return None
    return F.s_mul(_eval_poly(F, f.num.coeffs, a), F.s_inv(den))


def _eval_birat(F: GF, e: BiRat, a: int, b: int) -> int | None:
    if not e.is_laurent():
        raise ValueError("specialisation expects Laurent-polynomial entries")
    acc = F.zero
    for l, c in e.num._t.items():
        v = _eval_ratfunc(F, c, a)
        if v is None:
            return None
        acc = F.s_add(acc, F.s_mul(v, (b * l) % F.n))
    return acc


def specialize(rep: SurfaceRep, F: GF, rng: random.Random) -> Specialization:
    """Pick x, y in F_q^* where every generator entry is defined."""
    while True:
        a = rng.randrange(F.n)
        b = rng.randrange(F.n)
        images = {}
        for letter in LETTERS:
            vals = tuple(_eval_birat(F, e, a, b) for e in rep.matrix(letter).entries)
            if None in vals:
                break
            images[letter] = vals
        else:
            return Specialization(F, a, b, images)


@dataclass
class ScanResult:
    p: int
    max_len: int
    words: int = 0
    nf_identity: list[str] = field(default_factory=list)
    spec_identity: list[str] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def word_levels(max_len: int):
    """Freely reduced words, level by level: (parent index, last letter index) arrays."""
    inv = np.array([(i + 4) % 8 for i in range(8)])
    parents = np.zeros(0, dtype=np.int64)
    last = np.arange(8)
    yield np.full(8, -1), last
    for _ in range(2, max_len + 1):
        n = len(last)
        par = np.repeat(np.arange(n), 8)
        let = np.tile(np.arange(8), n)
        keep = let != inv[last[par]]
        parents, last = par[keep], let[keep]
        yield parents, last


def _spell(levels, depth: int, idx: int) -> str:
    out = []
    for d in range(depth, -1, -1):
        par, let = levels[d]
        out.append(LETTERS[let[idx]])
        idx = par[idx]
    return "".join(reversed(out))


def nf_identity_flags(max_len: int) -> list[np.ndarray]:
    """Per level, a boolean array marking words trivial in the surface group."""
    flags = []
    prev_states: list = [()]
    levels = list(word_levels(max_len))
    for depth, (par, let) in enumerate(levels):
        states = []
        flag = np.zeros(len(let), dtype=bool)
        keep = depth < max_len - 1
        for i in range(len(let)):
            st = push_letter(prev_states[par[i]] if depth else (), LETTERS[let[i]])
            if not st:
                flag[i] = True
            if keep:
                states.append(st)
        flags.append(flag)
        prev_states = states
    return flags


def scan_words(rep: SurfaceRep, max_len: int = 8, seed: int = 0, flags=None, k: int | None = None) -> ScanResult:
    """Check NF identity <=> image identity for all reduced words up to max_len."""
    p = rep.p
    F = GF(p, k or default_degree(p), seed=seed)
    spec = specialize(rep, F, random.Random(seed))
    levels = list(word_levels(max_len))
    flags = flags if flags is not None else nf_identity_flags(max_len)
    res = ScanResult(p, max_len, words=1 + sum(len(l) for _, l in levels))
    gens = np.array([spec.images[c] for c in LETTERS], dtype=np.int64)  # (8, 4)
    mats = None
    for depth, (par, let) in enumerate(levels):
        g = gens[let]
        if depth == 0:
            m11, m12, m21, m22 = g.T
        else:
            p11, p12, p21, p22 = (mats[j][par] for j in range(4))
            m11 = F.add(F.mul(p11, g[:, 0]), F.mul(p12, g[:, 2]))
            m12 = F.add(F.mul(p11, g[:, 1]), F.mul(p12, g[:, 3]))
            m21 = F.add(F.mul(p21, g[:, 0]), F.mul(p22, g[:, 2]))
            m22 = F.add(F.mul(p21, g[:, 1]), F.mul(p22, g[:, 3]))
        mats = (m11, m12, m21, m22)
        ident = (m11 == 0) & (m22 == 0) & (m12 == F.zero) & (m21 == F.zero)
        for i in np.nonzero(flags[depth])[0]:
            w = _spell(levels, depth, int(i))
            res.nf_identity.append(w)
            if not evaluate(w, rep).is_identity():
                res.mismatches.append(w)
        for i in np.nonzero(ident & ~flags[depth])[0]:
            w = _spell(levels, depth, int(i))
            res.spec_identity.append(w)
            if evaluate(w, rep).is_identity():
                res.mismatches.append(w)
    return res
