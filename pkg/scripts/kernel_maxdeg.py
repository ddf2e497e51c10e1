"""Full ideal of X_m via Gröbner bases and its minimal generator degrees.

An independent cross-check of the maxdeg bound for small m. X_6 takes
about 15 s, X_7 under a minute; larger m grow quickly.
"""
import argparse
import time
from dataclasses import dataclass

from regsurf.certifier.certify import conjectured_regularity, maxdeg_formula
from regsurf.groebner import Budget, kernel_of_map, minimal_generator_degrees
from regsurf.sections import sections


@dataclass
class Config:
    ms: tuple = (6, 7)
    family: str = "X"
    max_seconds: float = 1800.0


def main(cfg: Config):
    budget = Budget(max_seconds=cfg.max_seconds)
    for m in cfg.ms:
        t = time.perf_counter()
        K = kernel_of_map(sections(m, cfg.family), budget=budget)
        d = minimal_generator_degrees(K.ideal, budget=budget)
        secs = time.perf_counter() - t
        print(f"{cfg.family}_{m}: generators by degree {d.counts}")
        print(
            f"  maxdeg {d.maxdeg}  bound {maxdeg_formula(m)}  "
            f"conjectural reg {conjectured_regularity(m)}  ({secs:.1f}s)"
        )


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, nargs="+", default=[6, 7])
    ap.add_argument("--family", choices=("X", "Y"), default="X")
    ap.add_argument("--max-seconds", type=float, default=1800.0)
    a = ap.parse_args()
    main(Config(tuple(a.m), a.family, a.max_seconds))
