"""Hilbert function of X_6 near its regularity and the fitted Hilbert polynomial.

Takes about half a minute. h^1 of the ideal sheaf twist is P(d) - HF(d).
"""
import argparse
from dataclasses import dataclass

from regsurf.certifier.hilbert import hilbert_dim, hilbert_poly_fit
from regsurf.sections import sections


@dataclass
class Config:
    m: int = 6
    degrees: tuple = (31, 32)
    fit_start: int = 34


def main(cfg: Config):
    X = sections(cfg.m)
    for d in cfg.degrees:
        h = hilbert_dim(X, d)
        print(f"HF({d}) = {h.value}  ranks {h.ranks}  agree={h.agree}")
    fit = hilbert_poly_fit(X, cfg.fit_start, h1_degrees=cfg.degrees)
    c = fit.coefficients
    print("P(d) = " + " + ".join(f"({c[i]}) d^{i}" for i in reversed(range(len(c)))))
    for d in cfg.degrees:
        print(f"P({d}) = {fit(d)}  h1 = {fit.h1[d]}")
    print(f"degree from leading coefficient: {fit.degree}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=6)
    ap.add_argument("--degrees", type=int, nargs="+", default=[31, 32])
    ap.add_argument("--fit-start", type=int, default=34)
    a = ap.parse_args()
    main(Config(a.m, tuple(a.degrees), a.fit_start))
