"""Support enumeration, peeling, the x_0^t / x_0^t x_1 rank checks, column certificates."""
from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from importlib import resources

from ..families import build_f, closed_form_terms, full_range, monomial_exponent
from ..linalg import ExactMatrix, rank_dense_exact
from ..polyring import monomials_of_degree
from ..sections import sections
from .matrices import build_matrix_mod3


# ---------------------------------------------------------------- enumeration


@dataclass
class Family:
    index: int | None
    pattern: tuple  # (a_1, a_3, a_4)
    monomials: list
    u_range: tuple | None = None  # inclusive, when matched to a closed-form family


@dataclass
class Enumeration:
    k: int
    degree: int
    y0_target: int
    residue: int
    context: str | None
    families: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return sum(len(f.monomials) for f in self.families)

    def matches_closed_forms(self) -> bool:
        """True when every group is one closed-form family with its full u-range."""
        if self.context is None:
            return False
        idx = sorted(f.index for f in self.families if f.index is not None)
        return idx == [1, 2, 3, 4] and all(f.index is not None for f in self.families)


def _section_profile(k: int):
    """Per-section (y_0-exponent, y_2-exponent mod 3); both are constant on each section."""
    prof = []
    for s in sections(6 * k, "X").sections:
        y0 = {e[0] for e in s.terms}
        r = {e[2] % 3 for e in s.terms}
        if len(y0) != 1 or len(r) != 1:
            raise AssertionError("section does not have a constant grading profile")
        prof.append((y0.pop(), r.pop()))
    return prof


def lemma_context(k: int, degree: int, y0_target: int, residue: int) -> str | None:
    kk = k * k
    if y0_target != 12 * k - 2:
        return None
    if degree == 54 * kk - 21 * k + 1 and residue == 2:
        return "L"
    if degree == 54 * kk - 21 * k and residue == 1:
        return "W"
    return None


def enumerate_support_monomials(k: int, degree: int, y0_target: int, residue: int) -> Enumeration:
    """All degree-``degree`` x-monomials whose image under the X_{6k} sections
    has y_0-exponent ``y0_target`` and y_2-exponents = ``residue`` (mod 3).

    Exhaustive scan; survivors are grouped by (a_1, a_3, a_4) and each group is
    matched against the closed-form families of the lemma context.
    """
    prof = _section_profile(k)
    groups = defaultdict(list)
    for e in monomials_of_degree(5, degree):
        if sum(a * p[0] for a, p in zip(e, prof)) != y0_target:
            continue
        if sum(a * p[1] for a, p in zip(e, prof)) % 3 != residue % 3:
            continue
        groups[(e[1], e[3], e[4])].append(e)
    ctx = lemma_context(k, degree, y0_target, residue)
    out = Enumeration(k, degree, y0_target, residue, ctx)
    for pattern in sorted(groups):
        mons = sorted(groups[pattern], reverse=True)
        fam = Family(None, pattern, mons)
        if ctx is not None:
            for i in range(1, 5):
                rng = full_range(k, ctx, i)
                closed = [monomial_exponent(k, ctx, i, u) for u in rng]
                if sorted(closed, reverse=True) == mons:
                    fam.index, fam.u_range = i, (rng.start, rng.stop - 1)
                    break
        out.families.append(fam)
    out.families.sort(key=lambda f: (f.index is None, f.index or 0, f.pattern))
    return out


# ---------------------------------------------------------------- peeling


def peel_forced(family: dict) -> list:
    """Drop members owning a monomial no other member has, until none does.

    ``family`` maps labels to polynomials (or to iterables of monomials).
    Returns the surviving labels in input order.  Removal only shrinks
    supports, so the fixpoint does not depend on the removal order.
    """
    supports = {
        lab: set(f.terms) if hasattr(f, "terms") else set(f) for lab, f in family.items()
    }
    owners = defaultdict(set)
    for lab, sup in supports.items():
        for m in sup:
            owners[m].add(lab)
    alive = set(supports)
    queue = [next(iter(o)) for o in owners.values() if len(o) == 1]
    while queue:
        lab = queue.pop()
        if lab not in alive:
            continue
        alive.discard(lab)
        for m in supports[lab]:
            o = owners[m]
            o.discard(lab)
            if len(o) == 1:
                queue.append(next(iter(o)))
    return [lab for lab in family if lab in alive]


def w_family(k: int, expand: bool = False) -> dict:
    """W-context members over their full u-ranges, labelled (i, u)."""
    fam = {}
    for i in range(1, 5):
        for u in full_range(k, "W", i):
            if expand:
                fam[(i, u)] = build_f(k, "W", i, u)
            else:
                fam[(i, u)] = set(closed_form_terms(k, "W", i, u))
    return fam


def surviving_ranges(labels: list) -> dict:
    """Group (i, u) labels into {i: (lo, hi)}; raises if some family is not contiguous."""
    by = defaultdict(list)
    for i, u in labels:
        by[i].append(u)
    out = {}
    for i, us in sorted(by.items()):
        us.sort()
        if us != list(range(us[0], us[-1] + 1)):
            raise ValueError(f"family {i} survives non-contiguously: {us}")
        out[i] = (us[0], us[-1])
    return out


def peel_w(k: int, expand: bool = False) -> dict:
    return surviving_ranges(peel_forced(w_family(k, expand)))


def peel_closed_forms(k: int) -> dict:
    kk = k * k
    return {
        1: (0, 6 * kk - k - 2),
        2: (0, 18 * kk - 9 * k - 1),
        3: (0, 18 * kk - 10 * k),
        4: (0, 12 * kk - 7 * k - 1),
    }


# ---------------------------------------------------------------- x_0^t, x_0^t x_1


def lemma34_rows(k: int, t: int, variant: str) -> list:
    if t < 0:
        raise ValueError("t must be nonnegative")
    if variant == "A":
        polys = [build_f(k, "A", 1, u, t) for u in full_range(k, "A", 1, t)]
    elif variant == "B":
        polys = [build_f(k, "B", 1, u, t) for u in full_range(k, "B", 1, t)]
        if t - 6 * k + 2 >= 0:
            polys += [build_f(k, "B", 2, u, t) for u in full_range(k, "B", 2, t)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return polys


def lemma34_check(k: int, t: int, variant: str) -> bool:
    """Full row rank of the coefficient matrix of the variant's family at t."""
    polys = lemma34_rows(k, t, variant)
    cols = sorted({e for f in polys for e in f.terms})
    index = {e: j for j, e in enumerate(cols)}
    rows = []
    for f in polys:
        r = [0] * len(cols)
        for e, c in f.terms.items():
            r[index[e]] = c
        rows.append(r)
    M = ExactMatrix(len(rows), len(cols), dense=rows)
    return rank_dense_exact(M) == len(rows)


# ---------------------------------------------------------------- column certificates


def _load_json(name: str):
    return json.loads(resources.files("regsurf.data").joinpath(name).read_text())


@dataclass
class CertificateCheck:
    which: str
    ok: bool
    staircase_ok: bool
    combinations_ok: bool
    failures: list = field(default_factory=list)
    bold_pivots_used: int = 0


def verify_column_certificates(which: str, matrix: ExactMatrix | None = None) -> CertificateCheck:
    """Check the listed column combinations over F_3 and the staircase below them.

    For each listed target i the combination must vanish above row i, equal 1
    at row i and reproduce the displayed tail.  For the rows before the first
    listed target, column elimination row by row must find a vector that is 0
    above row i and 1 at row i; the column carrying the bold 1 of row i is the
    preferred pivot while it is still unused.
    """
    if which not in ("L", "W"):
        raise ValueError("column certificates exist for L and W only")
    if matrix is None:
        matrix, _ = build_matrix_mod3(1, which)
    p = 3
    A = matrix.rows()
    n = len(A)
    orig = [[A[r][c] % p for r in range(n)] for c in range(n)]
    certs = _load_json("column_certificates.json")[which]
    first_listed = min(c["target"] for c in certs)
    bold = {int(r): c - 1 for r, c in _load_json("bold_pivots.json")[which].items()}
    failures = []

    work = [list(c) for c in orig]
    free = set(range(n))
    covered = set()
    bold_used = 0
    for i in range(first_listed - 1):
        b = bold.get(i + 1)
        if b in free and work[b][i]:
            piv = b
            bold_used += 1
        else:
            piv = next((c for c in sorted(free) if work[c][i]), None)
        if piv is None:
            failures.append(("staircase", i + 1, "no column reaches this row"))
            continue
        free.discard(piv)
        inv = pow(work[piv][i], p - 2, p)
        work[piv] = [v * inv % p for v in work[piv]]
        for c in free:
            f = work[c][i]
            if f:
                work[c] = [(a - f * b2) % p for a, b2 in zip(work[c], work[piv])]
        covered.add(i + 1)
    staircase_ok = not failures

    for cert in certs:
        t = cert["target"]
        v = [0] * n
        for sign, c in cert["combination"]:
            v = [(a + sign * b2) % p for a, b2 in zip(v, orig[c - 1])]
        expected_tail = [x % p for x in cert["tail"]]
        if any(v[: t - 1]) or v[t - 1] != 1 or v[cert["tail_start"] - 1 :] != expected_tail:
            failures.append(("combination", t, v[t - 1 :]))
        else:
            covered.add(t)
    combos_ok = not any(f[0] == "combination" for f in failures)
    missing = sorted(set(range(1, n + 1)) - covered)
    if missing:
        failures.append(("coverage", None, missing))
    return CertificateCheck(
        which, staircase_ok and combos_ok and not missing, staircase_ok, combos_ok, failures, bold_used
    )
