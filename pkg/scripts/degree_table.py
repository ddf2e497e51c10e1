"""Degree, maxdeg lower bound and conjectural regularity of X_m for a range of m.

The degree column is computed twice: from the closed form and as the
normalized area of the exponent polygon divided by the lattice index.
"""
import argparse
from dataclasses import dataclass

from regsurf.certifier.certify import conjectured_regularity, degree_formula, maxdeg_formula
from regsurf.certifier.toric import toric_degree
from regsurf.sections import exponent_points


@dataclass
class Config:
    mmin: int = 6
    mmax: int = 30


def main(cfg: Config):
    print(f"{'m':>4} {'deg':>6} {'toric':>6} {'idx':>4} {'(3m2-7m+2)/2':>13} {'conj reg':>9}")
    for m in range(cfg.mmin, cfg.mmax + 1):
        t = toric_degree(exponent_points(m))
        print(
            f"{m:>4} {degree_formula(m):>6} {t.degree:>6} {t.lattice_index:>4} "
            f"{str(maxdeg_formula(m)):>13} {conjectured_regularity(m):>9}"
        )


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mmin", type=int, default=6)
    ap.add_argument("--mmax", type=int, default=30)
    main(Config(**vars(ap.parse_args())))
