"""Tabulate the substitution exponent making chosen words loxodromic.

For each word set, n is the least exponent from which y -> y*x^n makes every
trace strictly negative; the first exponent that happens to pass is shown too.

    python scripts/loxodromify_table.py --primes 2 3 5 7
"""
import argparse
from dataclasses import dataclass, field

from lftrees.errors import NotFound
from lftrees.repcheck import loxodromify
from lftrees.surfaceword import SurfaceRep

DEFAULT_SETS = ["abAB", "a", "ac", "bd", "abcd", "ac,bd,abcd", "acBD", "acbdAC"]


@dataclass
class Config:
    primes: list[int] = field(default_factory=lambda: [2, 5])
    sets: list[str] = field(default_factory=lambda: list(DEFAULT_SETS))
    n_max: int = 64


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=Config().primes)
    ap.add_argument("--sets", nargs="+", default=Config().sets, help="comma-separated word sets")
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    cfg = Config(**vars(ap.parse_args()))

    print(f"{'p':>3}  {'words':<14} {'n':>3} {'first':>5}  valuations")
    for p in cfg.primes:
        rep = SurfaceRep.builtin(p)
        for spec in cfg.sets:
            words = spec.split(",")
            try:
                res = loxodromify(words, rep, n_max=cfg.n_max)
            except NotFound as exc:
                print(f"{p:>3}  {spec:<14} not found: {exc}")
                continue
            vals = " ".join(f"{w}:{v}" for w, v in res.valuations.items())
            print(f"{p:>3}  {spec:<14} {res.n:>3} {res.first_success:>5}  {vals}")


if __name__ == "__main__":
    main()
