"""Words in the genus-2 surface group <a, b, c, d | [a,b][c,d]>.

Words are plain strings over ``abcdABCD``; an uppercase letter is the
inverse of its lowercase generator.  The group is treated as the amalgam
<a,b> *_H <c,d> with H generated by h = abAB = dcDC.  Factor 1 is <a,b>,
factor 2 is <c,d>.

The representation sends a, b, c, d to A, B, C, D with C, D the
conjugates of B, A by diag(1, y); so factor 2 carries the y-conjugation
and supplies the gamma syllables of a gamma-delta normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from lftrees.errors import NotAlternating, ParseError
from lftrees.funcfield import BiRat, RatFunc
from lftrees.sl2 import FamilyParams, Mat2, builtin_family, commutator, lift_to_birat, matfrm_pair, shalen_extend

GENERATORS = "abcd"
LETTERS = "abcdABCD"
FACTOR = {"a": 1, "b": 1, "A": 1, "B": 1, "c": 2, "d": 2, "C": 2, "D": 2}
H_GENERATOR = {1: "abAB", 2: "dcDC"}
RELATOR = "abABcdCD"
#: factor whose images are conjugated by diag(1, y)
GAMMA_FACTOR = 2


def parse_word(text: str) -> str:
    """Accepts letters from ``abcdABCD``; whitespace ignored; "1" or "" is the identity."""
    s = "".join(text.split())
    if s in ("", "1", "e"):
        return ""
    for i, ch in enumerate(s):
        if ch not in LETTERS:
            raise ParseError(f"invalid letter {ch!r} in word", i, text)
    return s


def inverse_word(w: str) -> str:
    return w[::-1].swapcase()


def free_reduce(w: str) -> str:
    out: list[str] = []
    for ch in w:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def h_word(factor: int, k: int) -> str:
    """Reduced spelling of h^k inside the given factor."""
    base = H_GENERATOR[factor]
    return (base if k > 0 else inverse_word(base)) * abs(k)


def h_power(factor: int, w: str) -> int | None:
    """k with w == h^k in the free factor (w reduced), or None when w is not in H."""
    n = len(w)
    if n == 0:
        return 0
    if n % 4:
        return None
    k = n // 4
    if w == H_GENERATOR[factor] * k:
        return k
    if w == inverse_word(H_GENERATOR[factor]) * k:
        return -k
    return None


Syllables = tuple[tuple[int, str], ...]


def push_syllable(stack: Syllables, f: int, w: str) -> Syllables:
    """Right-multiply a reduced syllable list by the factor-``f`` word ``w``.

    Keeps the list alternating with no syllable in H, except that a lone
    syllable may lie in H.
    """
    st = list(stack)
    while True:
        if st and st[-1][0] == f:
            w = free_reduce(st.pop()[1] + w)
            if not w:
                return tuple(st)
            continue
        if st:
            k = h_power(f, w)
            if k is not None:
                f = 3 - f
                w = h_word(f, k)
                continue
            if len(st) == 1:
                k0 = h_power(*st[0])
                if k0 is not None:
                    st.pop()
                    w = free_reduce(h_word(f, k0) + w)
                    if not w:
                        return ()
                    continue
        st.append((f, w))
        return tuple(st)


def push_letter(stack: Syllables, letter: str) -> Syllables:
    return push_syllable(stack, FACTOR[letter], letter)


@dataclass(frozen=True)
class AmalgamNF:
    """Reduced amalgam form: alternating syllables, none in H when there are two or more."""

    syllables: Syllables = ()

    @property
    def kind(self) -> str:
        n = len(self.syllables)
        return "identity" if n == 0 else "factor" if n == 1 else "alternating"

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    @property
    def word(self) -> str:
        return "".join(w for _, w in self.syllables)

    def __len__(self):
        return len(self.syllables)

    def __str__(self):
        if not self.syllables:
            return "⟨⟩"
        return "".join(f"⟨{f}:{w}⟩" for f, w in self.syllables)


def _canonical(stack: Syllables) -> AmalgamNF:
    if len(stack) == 1:
        f, w = stack[0]
        k = h_power(f, w)
        if k is not None and f != 1:
            stack = ((1, h_word(1, k)),)
    return AmalgamNF(tuple(stack))


def amalgam_normal_form(w: str) -> AmalgamNF:
    stack: Syllables = ()
    for ch in free_reduce(w):
        stack = push_letter(stack, ch)
    return _canonical(stack)


def free_image(w: str) -> str:
    """Image under a, d -> x and b, c -> y, freely reduced over ``xyXY``."""
    return free_reduce(w.translate(str.maketrans("adADbcBC", "xxXXyyYY")))


# -- representations -----------------------------------------------------------

@dataclass(frozen=True)
class SurfaceRep:
    """Images of a, b, c, d in SL(2, F_p(x, y)) satisfying the surface relation."""

    images: dict[str, Mat2]
    p: int
    provenance: str = "custom"
    _all: dict[str, Mat2] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        imgs = {g: lift_to_birat(self.images[g]) for g in GENERATORS}
        for g, M in imgs.items():
            if M.det() != 1:
                raise ValueError(f"image of {g} is not in SL2")
        lhs = commutator(imgs["a"], imgs["b"])
        rhs = commutator(imgs["d"], imgs["c"])
        if lhs != rhs:
            raise ValueError("images violate [a,b] = [d,c]")
        object.__setattr__(self, "images", imgs)
        table = dict(imgs)
        for g, M in imgs.items():
            table[g.upper()] = M.adjugate()
        object.__setattr__(self, "_all", table)

    @classmethod
    def from_pair(cls, A: Mat2, B: Mat2, provenance: str = "custom") -> SurfaceRep:
        C, D = shalen_extend(A, B)
        return cls({"a": A, "b": B, "c": C, "d": D}, A.p, provenance)

    @classmethod
    def from_params(cls, params: FamilyParams, provenance: str = "custom") -> SurfaceRep:
        A, B, _, _ = matfrm_pair(params)
        return cls.from_pair(A, B, provenance)

    @classmethod
    def builtin(cls, p: int) -> SurfaceRep:
        return cls.from_params(builtin_family(p), provenance=f"builtin(p={p})")

    def matrix(self, letter: str) -> Mat2:
        return self._all[letter]

    @property
    def identity(self) -> Mat2:
        return Mat2.identity(self.images["a"].m11)


def evaluate(w: str, rep: SurfaceRep) -> Mat2:
    if not w:
        return rep.identity
    M = rep.matrix(w[0])
    for ch in w[1:]:
        M = M @ rep.matrix(ch)
    return M


# -- leading term of a gamma-delta word -----------------------------------------

@dataclass(frozen=True)
class LeadingData:
    l: int
    alpha: RatFunc
    shaped: AmalgamNF
    conjugator: str  # shaped.word == reduce(conjugator + original + conjugator^-1)


def gamma_delta_shape(nf: AmalgamNF) -> tuple[AmalgamNF, str]:
    """Conjugate an alternating form to gamma_1 delta_1 ... gamma_l delta_l.

    gamma syllables come from the y-conjugated factor.  Raises NotAlternating
    when the element turns out to be conjugate into a single factor.
    """
    if nf.kind != "alternating":
        raise NotAlternating(f"{nf} is not an alternating normal form")
    conj = ""
    while len(nf.syllables) % 2 == 1:
        last = nf.syllables[-1][1]
        conj = free_reduce(last + conj)
        nf = amalgam_normal_form(last + nf.word[: -len(last)])
        if nf.kind != "alternating":
            raise NotAlternating("element is conjugate into a factor")
    if nf.syllables[0][0] != GAMMA_FACTOR:
        first = nf.syllables[0][1]
        conj = free_reduce(inverse_word(first) + conj)
        nf = AmalgamNF(nf.syllables[1:] + nf.syllables[:1])
    return nf, conj


def _y_coeff(e: BiRat, k: int) -> RatFunc:
    if not e.is_laurent():
        raise ValueError(f"{e} is not a Laurent polynomial in y")
    return e.num.coeff(k)


def leading_data(nf: AmalgamNF, rep: SurfaceRep) -> LeadingData:
    """Top y-degree l and leading coefficient alpha of the bottom-right entry.

    alpha is the product over syllable pairs of (y-coefficient of the
    bottom-left entry of gamma_i) times (top-right entry of delta_i).
    """
    shaped, conj = gamma_delta_shape(nf)
    syl = shaped.syllables
    alpha = RatFunc.constant(1, rep.p)
    for i in range(0, len(syl), 2):
        gamma = evaluate(syl[i][1], rep)
        delta = evaluate(syl[i + 1][1], rep)
        alpha = alpha * _y_coeff(gamma.m21, 1) * _y_coeff(delta.m12, 0)
    return LeadingData(len(syl) // 2, alpha, shaped, conj)


def top_y_term(e: BiRat) -> tuple[int, RatFunc]:
    """(degree, coefficient) of the highest power of y in a Laurent polynomial."""
    if not e.is_laurent() or e.is_zero():
        raise ValueError(f"{e} is not a nonzero Laurent polynomial in y")
    k = e.num.max_exp
    return k, e.num.coeff(k)
