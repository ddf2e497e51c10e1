"""Acceptance criteria 1-10, one line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from regsurf.arith import binom_mod_p
from regsurf.certifier.certify import certify, check_degree34_generator, degree34_generator
from regsurf.certifier.hilbert import hilbert_dim, hilbert_poly_fit
from regsurf.certifier.lemmas import (
    enumerate_support_monomials,
    lemma34_check,
    peel_closed_forms,
    peel_w,
    verify_column_certificates,
)
from regsurf.certifier.matrices import WHICH, CertMatrixSpec, build_matrix, build_matrix_mod3
from regsurf.certifier.toric import toric_degree
from regsurf.groebner import (
    Budget,
    BudgetExceeded,
    IdealBasis,
    buchberger,
    elimination_order_for,
    ideals_equal,
    kernel_of_map,
    minimal_generator_degrees,
    partial_elimination,
)
from regsurf.polyring import Poly, Ring, monomials_of_degree, substitute
from regsurf.sections import bundled_map, exponent_points, sections, twisted_cubic

try:
    from conftest import ACCEPTANCE
except ImportError:  # pragma: no cover - direct run without the tests dir on the path
    ACCEPTANCE = {}


class Incomplete(Exception):
    pass


def _run(n: int, fn, limit: float):
    t = time.perf_counter()
    try:
        detail = fn()
        secs = time.perf_counter() - t
        status = "PASS" if secs < limit else "FAIL"
        if status == "FAIL":
            detail = f"{detail}; over the {limit:.0f}s limit"
    except Incomplete as exc:
        secs, status, detail = time.perf_counter() - t, "INCOMPLETE", str(exc)
    except AssertionError as exc:
        secs, status, detail = time.perf_counter() - t, "FAIL", f"assertion: {exc}"
    ACCEPTANCE[n] = (status, secs, detail)
    print(f"criterion {n:>2}: {status:<10} {secs:8.2f}s  {detail}")
    return status


def c1():
    out = []
    for which, n in (("L", 30), ("W", 27)):
        M, diff = build_matrix_mod3(1, which)
        assert M.shape == (n, n) and diff == [], (which, diff[:5])
        out.append(f"{which}(1) {n}x{n} diff empty")
    return "; ".join(out)


def c2():
    r = certify(6)
    assert (r.degree, r.maxdeg_lower_bound) == (33, 34)
    assert r.L_invertible["verdict"] and r.W_invertible["verdict"] and r.eg_violated is True
    return f"degree 33, maxdeg >= 34, L/W invertible ({r.L_invertible['method']}), violated"


def c3():
    F = degree34_generator()
    assert F.terms[(32, 2, 0, 0, 0)] == 7
    assert check_degree34_generator()
    return f"{len(F)}-term degree-34 polynomial maps to 0 under X_6"


def c4():
    for which in ("L", "W"):
        chk = verify_column_certificates(which)
        assert chk.ok, (which, chk.failures)
    return "L targets 25-30 and W targets 23-27 verified over F_3, staircases complete"


def c5():
    seen = []
    for k in range(1, 6):
        r = certify(6 * k)
        assert r.eg_violated is True and r.L_invertible["method"] == "modular-determinant", k
        seen.append((6 * k, r.degree, r.maxdeg_lower_bound))
    assert seen[-1] == (30, 873, 1246)
    return "k=1..5 certified; m=30: degree 873, maxdeg >= 1246"


def c6():
    degs = []
    for m in range(6, 26):
        t = toric_degree(exponent_points(m))
        assert t.lattice_index == 1 and t.degree == m * m - m + 3, m
        degs.append(t.degree)
    return f"m=6..25 -> {degs[0]}, {degs[1]}, ..., {degs[-1]}; index 1 throughout"


def c7():
    X = sections(6)
    h31, h32 = hilbert_dim(X, 31), hilbert_dim(X, 32)
    assert h31.agree and h32.agree
    assert (h31.value, h32.value) == (14509, 15514)
    fit = hilbert_poly_fit(X, 34, 3, h1_degrees=(31, 32))
    assert fit(31) == 14511 and fit(32) == 15515
    assert fit.h1 == {31: 2, 32: 1} and fit.degree == 33
    return "HF(31)=14509, HF(32)=15514 (2 primes agree); P(31)=14511, h1=2,1; degree 33"


def c8():
    tc = kernel_of_map(twisted_cubic())
    smap = twisted_cubic()
    x = smap.target.gens()
    oracle = buchberger([x[0] * x[2] - x[1] ** 2, x[1] * x[3] - x[2] ** 2, x[0] * x[3] - x[1] * x[2]])
    assert len(tc.basis) == 3 and ideals_equal(tc.basis, oracle)
    K = kernel_of_map(bundled_map("reg11_surface"))
    d = minimal_generator_degrees(K.ideal)
    assert d.counts == {5: 1, 6: 13, 7: 4, 8: 2, 11: 1} and d.maxdeg == 11, d
    return "twisted cubic: 3 quadrics; reg-11 surface: {5:1, 6:13, 7:4, 8:2, 11:1}, maxdeg 11"


def _pei_oracle_check(seed: int):
    from test_groebner import degree_span, pei_by_definition, rank

    rng = random.Random(seed)
    R = Ring(("x0", "x1", "x2", "x3"), 32003)
    gens = []
    for _ in range(rng.randint(1, 3)):
        d = rng.randint(1, 3)
        mons = list(monomials_of_degree(4, d))
        gens.append(Poly(R, {e: rng.choice([1, -1, 2]) for e in rng.sample(mons, rng.randint(1, 3))}))
    F = partial_elimination(IdealBasis(R, gens), 0)
    for i in range(4):
        Ki = F.ks[min(i, F.s)]
        for t in range(i, 7):
            vecs, _ = pei_by_definition(gens, 4, i, t)
            rows, mons = degree_span(Ki.polys, t - i, 3)
            assert rank(vecs, len(mons)) == rank(rows, len(mons)) == rank(vecs + rows, len(mons))


def c9():
    for k in (1, 2, 3):
        for which in WHICH:
            assert build_matrix(CertMatrixSpec(k, which)) == build_matrix(CertMatrixSpec(k, which, "expansion"))
    parts = ["(a)", "(b)"]  # the W comparison above is the slicing law
    for k in range(1, 5):
        assert peel_w(k) == peel_closed_forms(k), k
    parts.append("(c)")
    assert enumerate_support_monomials(1, 34, 10, 2).matches_closed_forms()
    assert enumerate_support_monomials(1, 33, 10, 1).matches_closed_forms()
    parts.append("(d)")
    assert all(lemma34_check(1, t, v) for t in range(61) for v in ("A", "B"))
    parts.append("(e)")
    from math import comb

    assert all(binom_mod_p(n, k, p) == comb(n, k) % p for p in (3, 5) for n in range(201) for k in range(n + 1))
    parts.append("(f)")
    for seed in range(12):
        _pei_oracle_check(seed)
    parts.append("(g)")
    for smap in (twisted_cubic(), bundled_map("reg11_surface"), sections(6, "Y")):
        K = kernel_of_map(smap)
        assert all(substitute(g, smap).is_zero() for g in K.ideal.gens)
    parts.append("(h)")
    return " ".join(parts) + " all hold"


def c10():
    Y = bundled_map("y6_lambda")
    budget = Budget(max_seconds=3600)
    try:
        K = kernel_of_map(Y, x_order=elimination_order_for(6, 5), budget=budget)
        F = partial_elimination(K.basis, 5, budget=budget)
    except BudgetExceeded as exc:
        raise Incomplete(f"stopped by the 60 min budget ({exc})")
    assert F.s == 3 and F.ks[3].is_unit() and not F.ks[2].is_unit()
    # K_0 is the ideal of the projection, i.e. of X_6
    X6 = kernel_of_map(sections(6))
    K0 = F.ks[0]
    assert ideals_equal(K0, buchberger(X6.ideal.gens, K0.order))
    return "K_3 = (1), s = 3, K_0 = I(X_6)"


CRITERIA = [
    (1, c1, 1.0),
    (2, c2, 10.0),
    (3, c3, 1.0),
    (4, c4, 1.0),
    (5, c5, 300.0),
    (6, c6, 1.0),
    (7, c7, 1800.0),
    (8, c8, 600.0),
    (9, c9, 600.0),
    (10, c10, 3600.0),
]


@pytest.mark.parametrize("n,fn,limit", CRITERIA, ids=[f"criterion{n}" for n, _, _ in CRITERIA])
def test_criterion(n, fn, limit):
    status = _run(n, fn, limit)
    if n == 10 and status == "INCOMPLETE":
        return  # the stretch criterion may be incomplete without failing the suite
    assert status == "PASS", ACCEPTANCE[n][2]


if __name__ == "__main__":
    results = [_run(n, fn, limit) for n, fn, limit in CRITERIA]
    sys.exit(0 if all(s in ("PASS", "INCOMPLETE") for s in results) else 1)
