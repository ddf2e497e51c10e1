"""Hilbert function of the image of a section map, and its Hilbert polynomial.

dim (S/I_X)_d is the rank of the matrix whose rows are the expansions of the
degree-d monomials in the sections.  The matrix splits into blocks: every
section is homogeneous for the grading by Z^{n+1}/Lambda, where Lambda is
spanned by exponent differences inside each section, so each monomial's
image sits in a single class.  Ranks are taken modulo primes; a rank mod p
never exceeds the rational rank, and agreement of two large primes is the
Monte Carlo evidence reported with the value.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from ..arith import hermite_rows, is_prime, reduce_mod_lattice
from ..linalg import rank_numpy_mod_p
from ..polyring import SectionMap, monomials_of_degree

DEFAULT_PRIMES = (1073741827, 1073741831)  # the two smallest primes above 2^30
CAVEAT = "rank modulo primes; equals the rational rank unless every prime divides a maximal minor"


@dataclass
class HilbertDim:
    d: int
    value: int
    ranks: dict
    agree: bool
    caveat: str = CAVEAT

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "value": self.value,
            "ranks": {str(p): r for p, r in self.ranks.items()},
            "primes_agree": self.agree,
            "caveat": self.caveat,
        }


def grading_lattice(smap: SectionMap) -> list:
    diffs = []
    for s in smap.sections:
        exps = sorted(s.terms)
        diffs += [[a - b for a, b in zip(e, exps[0])] for e in exps[1:]]
    return hermite_rows(diffs)


def _mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


class _Images:
    """Images of x-monomials via cached section powers (integer coefficients)."""

    def __init__(self, smap: SectionMap):
        self.secs = [dict(s.terms) for s in smap.sections]
        self.pows = [{0: {smap.source.zero_exp(): 1}} for _ in self.secs]

    def power(self, i: int, k: int) -> dict:
        table = self.pows[i]
        if k not in table:
            j = max(table)
            while j < k:
                table[j + 1] = _mul(table[j], self.secs[i])
                j += 1
        return table[k]

    def image(self, e) -> dict:
        out = None
        for i, k in enumerate(e):
            if not k:
                continue
            P = self.power(i, k)
            out = P if out is None else _mul(out, P)
        return out


def _blocks(smap: SectionMap, d: int) -> list:
    H = grading_lattice(smap)
    img = _Images(smap)
    blocks = defaultdict(list)
    for e in monomials_of_degree(len(smap.sections), d):
        f = img.image(e) if d else {smap.source.zero_exp(): 1}
        if not f:
            continue
        blocks[reduce_mod_lattice(next(iter(f)), H)].append(f)
    return [blocks[k] for k in sorted(blocks)]


def _block_rank(rows: list, p: int) -> int:
    cols = sorted({e for f in rows for e in f})
    if len(rows) == 1 or len(cols) == 1:
        return 1
    index = {e: j for j, e in enumerate(cols)}
    A = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, f in enumerate(rows):
        for e, c in f.items():
            A[i, index[e]] = c % p
    if A.shape[0] > A.shape[1]:
        A = A.T.copy()
    return rank_numpy_mod_p(A, p)


def hilbert_dim(smap: SectionMap, d: int, primes=DEFAULT_PRIMES) -> HilbertDim:
    """dim (S/I_X)_d for the image X of the map, as a rank of image expansions."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    primes = tuple(primes)
    if not primes or not all(is_prime(p) and p < 2**31 for p in primes):
        raise ValueError("need one or more primes below 2^31")
    blocks = _blocks(smap, d)
    ranks = {p: sum(_block_rank(b, p) for b in blocks) for p in primes}
    vals = set(ranks.values())
    return HilbertDim(d, max(vals), ranks, len(vals) == 1)


class InconsistentSamples(ValueError):
    pass


@dataclass
class HilbertPolyFit:
    coefficients: list  # Fractions, constant term first
    dimension: int
    degree: Fraction
    samples: dict
    h1: dict = field(default_factory=dict)
    hilbert_values: dict = field(default_factory=dict)

    def __call__(self, d: int) -> Fraction:
        return sum(c * d**i for i, c in enumerate(self.coefficients))

    def as_dict(self) -> dict:
        def num(x):
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else str(x)

        return {
            "coefficients": [num(c) for c in self.coefficients],
            "dimension": self.dimension,
            "degree": num(self.degree),
            "samples": {str(d): v for d, v in sorted(self.samples.items())},
            "hilbert_values": {str(d): v for d, v in sorted(self.hilbert_values.items())},
            "P": {str(d): num(self(d)) for d in sorted(self.h1)},
            "h1": {str(d): num(v) for d, v in sorted(self.h1.items())},
        }


def interpolate(points: dict) -> list:
    """Power-basis coefficients of the Lagrange interpolant through ``{x: y}``."""
    xs = sorted(points)
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += Fraction(points[xi]) * b / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def hilbert_poly_fit(
    smap: SectionMap,
    d_start: int,
    count: int | None = None,
    *,
    h1_degrees=(),
    primes=DEFAULT_PRIMES,
    dimension: int | None = None,
) -> HilbertPolyFit:
    """Fit the Hilbert polynomial through d_start, d_start+1, ... .

    ``dimension`` defaults to (number of source variables - 1), i.e. a
    generically finite map.  With more than dimension+1 samples the extra
    ones must lie on the fitted polynomial.  For each degree in
    ``h1_degrees`` the report gives P(d) - dim (S/I_X)_d.
    """
    dim = dimension if dimension is not None else smap.source.nvars - 1
    count = count or dim + 1
    if count < dim + 1:
        raise ValueError(f"need at least {dim + 1} samples for a degree-{dim} polynomial")
    samples = {d: hilbert_dim(smap, d, primes).value for d in range(d_start, d_start + count)}
    first = dict(list(samples.items())[: dim + 1])
    coeffs = interpolate(first)
    coeffs += [Fraction(0)] * (dim + 1 - len(coeffs))
    fit = HilbertPolyFit(coeffs, dim, factorial(dim) * coeffs[dim], samples)
    for d, v in samples.items():
        if fit(d) != v:
            raise InconsistentSamples(f"sample at d={d} is {v}, the fit predicts {fit(d)}")
    for d in h1_degrees:
        hv = hilbert_dim(smap, d, primes).value
        fit.hilbert_values[d] = hv
        fit.h1[d] = fit(d) - hv
    return fit
