"""Check that a reduced word is trivial in the surface group exactly when its matrix is.

Every freely reduced word up to --max-len is tested, for each prime given.

    python scripts/faithfulness_scan.py --primes 2 3 5 --max-len 8
"""
import argparse
import time
from dataclasses import dataclass, field

from lftrees.specialize import nf_identity_flags, scan_words
from lftrees.surfaceword import SurfaceRep


@dataclass
class Config:
    primes: list[int] = field(default_factory=lambda: [2, 3, 5])
    max_len: int = 8
    seed: int = 0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=Config().primes)
    ap.add_argument("--max-len", type=int, default=Config.max_len)
    ap.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(ap.parse_args()))

    start = time.perf_counter()
    flags = nf_identity_flags(cfg.max_len)
    print(f"normal forms of all reduced words up to length {cfg.max_len}: {time.perf_counter() - start:.1f}s")
    for p in cfg.primes:
        start = time.perf_counter()
        res = scan_words(SurfaceRep.builtin(p), cfg.max_len, seed=cfg.seed, flags=flags)
        print(
            f"p={p}: {res.words} words, {len(res.nf_identity)} trivial, "
            f"{len(res.spec_identity)} needed exact evaluation, "
            f"{len(res.mismatches)} mismatches ({time.perf_counter() - start:.1f}s)"
        )
        for w in res.mismatches[:10]:
            print(f"  mismatch: {w}")


if __name__ == "__main__":
    main()
