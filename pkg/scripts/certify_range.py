"""Certify X_m for m = 6k over a range of k and print a table.

    python3 scripts/certify_range.py --kmax 5
"""
import argparse
import json
import time
from dataclasses import dataclass

from regsurf.certifier.certify import certify


@dataclass
class Config:
    kmin: int = 1
    kmax: int = 5
    seed: int = 0
    json: bool = False


def main(cfg: Config):
    rows = []
    for k in range(cfg.kmin, cfg.kmax + 1):
        t = time.perf_counter()
        r = certify(6 * k, seed=cfg.seed)
        rows.append(r.as_dict() | {"seconds": round(time.perf_counter() - t, 2)})
    if cfg.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
        return rows
    print(f"{'m':>4} {'deg':>6} {'maxdeg>=':>9} {'L':>5} {'W':>5} {'violated':>9} {'secs':>7}")
    for r in rows:
        print(
            f"{r['m']:>4} {r['degree']:>6} {r['maxdeg_lower_bound']:>9} "
            f"{str(r['L_invertible']['verdict']):>5} {str(r['W_invertible']['verdict']):>5} "
            f"{str(r['eg_violated']):>9} {r['seconds']:>7}"
        )
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmin", type=int, default=1)
    ap.add_argument("--kmax", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    main(Config(**vars(ap.parse_args())))
