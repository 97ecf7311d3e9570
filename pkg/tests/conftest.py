import os
import random

import pytest
from hypothesis import HealthCheck, settings

from lftrees.funcfield import BiRat, Poly, RatFunc, YLaurent

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", deadline=None, max_examples=200, derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PRIMES = (2, 3, 5, 7, 13)


def rand_poly(rng: random.Random, p: int, maxdeg: int = 4) -> Poly:
    return Poly([rng.randrange(p) for _ in range(rng.randint(0, maxdeg) + 1)], p)


def rand_ratfunc(rng: random.Random, p: int, maxdeg: int = 3, nonzero: bool = False) -> RatFunc:
    while True:
        num = rand_poly(rng, p, maxdeg)
        den = rand_poly(rng, p, maxdeg)
        if den.is_zero() or (nonzero and num.is_zero()):
            continue
        return RatFunc(num, den)


def rand_laurent(rng: random.Random, p: int, span: int = 2, maxdeg: int = 2) -> YLaurent:
    terms = {}
    for e in range(-span, span + 1):
        if rng.random() < 0.5:
            terms[e] = rand_ratfunc(rng, p, maxdeg)
    return YLaurent(terms, p)


def rand_birat(rng: random.Random, p: int, nonzero: bool = False) -> BiRat:
    while True:
        num = rand_laurent(rng, p)
        den = rand_laurent(rng, p, span=1)
        if den.is_zero() or (nonzero and num.is_zero()):
            continue
        return BiRat(num, den)


@pytest.fixture
def rng():
    return random.Random(20240611)


def rand_params(rng: random.Random, p: int, maxdeg: int = 2):
    """Random nonzero c, h, d, delta with X and Y nonzero."""
    from lftrees.errors import DegenerateXY
    from lftrees.sl2 import FamilyParams

    while True:
        c, h, d, delta = (rand_ratfunc(rng, p, maxdeg, nonzero=True) for _ in range(4))
        try:
            return FamilyParams(c=c, h=h, d=d, delta=delta)
        except DegenerateXY:
            continue


# criterion number -> (passed, seconds, budget, note); filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, float, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, secs, budget, note = ACCEPTANCE[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({secs:.1f}s of {budget:.0f}s)"
        terminalreporter.write_line(line + (f"  {note}" if note else ""))
