"""Certify the builtin surface representation over a range of primes.

    python scripts/certify_primes.py --max-prime 200
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from lftrees.errors import CertificationError
from lftrees.funcfield import is_prime
from lftrees.repcheck import surface_rep_certificate


@dataclass
class Config:
    max_prime: int = 100
    json: bool = False


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-prime", type=int, default=Config.max_prime)
    ap.add_argument("--json", action="store_true")
    cfg = Config(**vars(ap.parse_args()))

    rows = []
    for p in range(2, cfg.max_prime + 1):
        if not is_prime(p):
            continue
        start = time.perf_counter()
        try:
            cert = surface_rep_certificate(p)
            row = {"p": p, "pass": True, "s": cert.free.s, "lengths": list(cert.free.lengths)}
        except CertificationError as exc:
            row = {"p": p, "pass": False, "stage": exc.stage, "error": str(exc)}
        row["seconds"] = round(time.perf_counter() - start, 3)
        rows.append(row)
        if not cfg.json:
            status = f"s={row['s']} lengths={row['lengths']}" if row["pass"] else f"FAIL at {row['stage']}"
            print(f"p={p:4d}  {status}  ({row['seconds']}s)")
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "results": rows}, indent=2))
    else:
        print(f"{sum(r['pass'] for r in rows)}/{len(rows)} primes certified")


if __name__ == "__main__":
    main()
