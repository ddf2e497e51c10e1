"""Buchberger engine, kernels of ring maps, partial elimination ideals.

Coefficients live in Q (kept as primitive integer polynomials during the run)
or in F_p, following the ring's modulus.  Pairs are chosen by the normal
strategy on sugar degree with ties broken by the lcm exponent, and pruned
with the Gebauer-Moeller criteria, so output is deterministic.
"""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .polyring import MonomialOrder, Poly, Ring, SectionMap, degrevlex, lex, substitute


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit a configured cap; no partial answer is returned."""

    def __init__(self, what: str, limit, stats: dict | None = None):
        super().__init__(f"budget exceeded: {what} > {limit}")
        self.what = what
        self.limit = limit
        self.stats = stats or {}


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 10**7
    max_basis: int = 10**6
    max_seconds: float = 1800.0


@dataclass
class IdealBasis:
    ring: Ring
    gens: list
    weights: tuple | None = None

    def __post_init__(self):
        self.gens = [g for g in self.gens if not g.is_zero()]
        for g in self.gens:
            if g.ring != self.ring:
                raise ValueError("generator lives in a different ring")
            if not g.is_homogeneous(self.weights):
                raise ValueError(f"generator {g} is not homogeneous")


@dataclass
class GroebnerBasis:
    ring: Ring
    order: MonomialOrder
    polys: list
    reduced: bool = True
    complete: bool = True
    stats: dict = field(default_factory=dict)

    def leading_monomials(self) -> list:
        return [g.leading_term(self.order)[0] for g in self.polys]

    def is_unit(self) -> bool:
        return any(sum(e) == 0 for e in self.leading_monomials())

    def __len__(self):
        return len(self.polys)


# ---------------------------------------------------------------- engine


def _mask(e) -> int:
    m = 0
    for i, a in enumerate(e):
        if a:
            m |= 1 << i
    return m


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class _Engine:
    """Incremental Buchberger state; polynomials are plain exponent->coeff dicts."""

    def __init__(self, ring: Ring, order: MonomialOrder, weights=None, budget: Budget | None = None):
        self.ring = ring
        self.p = ring.modulus
        self.order = order
        self.weights = tuple(weights) if weights is not None else (1,) * ring.nvars
        self.budget = budget or Budget()
        self._key = order.key_fn()
        self._keys: dict = {}
        self.polys: list = []  # dicts
        self.lms: list = []
        self.lcs: list = []
        self.sugar: list = []
        self.masks: list = []
        self.active: list = []  # indices forming the current basis
        self.pairs: list = []  # heap of (sugar, lcm, i, j)
        self.live: set = set()
        self.pairs_done = 0
        self.t0 = time.monotonic()

    # -- bookkeeping
    def key(self, e):
        k = self._keys.get(e)
        if k is None:
            k = tuple(-x for x in self._key(e))
            self._keys[e] = k
        return k

    def wdeg(self, e) -> int:
        return sum(w * a for w, a in zip(self.weights, e))

    def _check_budget(self):
        b = self.budget
        if self.pairs_done > b.max_pairs:
            raise BudgetExceeded("pairs", b.max_pairs, self.stats())
        if len(self.polys) > b.max_basis:
            raise BudgetExceeded("basis size", b.max_basis, self.stats())
        if time.monotonic() - self.t0 > b.max_seconds:
            raise BudgetExceeded("seconds", b.max_seconds, self.stats())

    def stats(self) -> dict:
        return {"pairs": self.pairs_done, "polys": len(self.polys), "basis": len(self.active)}

    def _lead(self, f: dict):
        return min(f, key=self.key)

    def _normalize(self, f: dict) -> dict:
        if self.p:
            inv = pow(f[self._lead(f)], -1, self.p)
            return {e: c * inv % self.p for e, c in f.items()}
        g = 0
        for c in f.values():
            g = gcd(g, c)
            if g == 1:
                break
        if f[self._lead(f)] < 0:
            g = -g
        return {e: c // g for e, c in f.items()} if g != 1 else f

    def _divisor(self, e, emask):
        for idx in self.active:
            lm = self.lms[idx]
            if self.masks[idx] & ~emask:
                continue
            if _divides(lm, e):
                return idx
        return None

    # -- reduction
    def reduce(self, f: dict, full: bool = True, keep=None) -> dict:
        """Remainder of f modulo the active basis (only the head when ``full`` is false).

        The term at exponent ``keep`` is left alone; interreduction uses it to
        protect a leading term.
        """
        p = self.p
        acc = dict(f)
        heap = [(self.key(e), e) for e in acc]
        heapq.heapify(heap)
        rem: dict = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = acc.pop(e, 0)
            if not c:
                continue
            idx = None if e == keep else self._divisor(e, _mask(e))
            if idx is None:
                rem[e] = c
                if not full:
                    rem.update(acc)
                    break
                continue
            g, lc = self.polys[idx], self.lcs[idx]
            m = _sub(e, self.lms[idx])
            if p:
                fac = c * pow(lc, -1, p) % p
            else:
                d = gcd(c, lc)
                a, fac = lc // d, c // d
                if a != 1:
                    if a == -1:
                        fac, a = -fac, 1
                    else:
                        for k in acc:
                            acc[k] *= a
                        for k in rem:
                            rem[k] *= a
            for ge, gc in g.items():
                if ge == self.lms[idx]:
                    continue
                ne = _add(ge, m)
                old = acc.get(ne)
                v = (old or 0) - fac * gc
                if p:
                    v %= p
                if v:
                    if old is None:
                        heapq.heappush(heap, (self.key(ne), ne))
                    acc[ne] = v
                elif old is not None:
                    del acc[ne]
        if rem and not p:
            rem = self._normalize(rem)
        return rem

    # -- pair handling
    def _store(self, f: dict, sugar: int) -> int:
        f = self._normalize(f)
        lm = self._lead(f)
        self.polys.append(f)
        self.lms.append(lm)
        self.lcs.append(f[lm])
        self.sugar.append(sugar)
        self.masks.append(_mask(lm))
        return len(self.polys) - 1

    def add(self, f: dict, sugar: int | None = None):
        """Insert a nonzero polynomial and update the pair set (Gebauer-Moeller)."""
        if sugar is None:
            sugar = max(self.wdeg(e) for e in f)
        h = self._store(f, sugar)
        t = self.lms[h]
        # new pairs, chain criterion among themselves
        cand = []
        for g in self.active:
            lg = self.lms[g]
            cand.append((g, _lcm(lg, t), all(a == 0 or b == 0 for a, b in zip(lg, t))))
        keep = []
        while cand:
            g, L, coprime = cand.pop(0)
            if coprime or not (
                any(_divides(L2, L) for _, L2, _ in cand) or any(_divides(L2, L) for _, L2, _ in keep)
            ):
                keep.append((g, L, coprime))
        # old pairs whose lcm is divisible by t but differs from both new lcms
        if self.live:
            dead = []
            for pr in self.live:
                i, j = pr
                L = _lcm(self.lms[i], self.lms[j])
                if _divides(t, L) and _lcm(self.lms[i], t) != L and _lcm(self.lms[j], t) != L:
                    dead.append(pr)
            for pr in dead:
                self.live.discard(pr)
        for g, L, coprime in keep:
            if coprime:
                continue
            s = max(self.sugar[g] + self.wdeg(_sub(L, self.lms[g])), sugar + self.wdeg(_sub(L, t)))
            self.live.add((g, h))
            heapq.heappush(self.pairs, (s, L, g, h))
        self.active = [g for g in self.active if not _divides(t, self.lms[g])] + [h]
        self._check_budget()

    def spoly(self, i: int, j: int) -> dict:
        L = _lcm(self.lms[i], self.lms[j])
        mi, mj = _sub(L, self.lms[i]), _sub(L, self.lms[j])
        ci, cj = self.lcs[i], self.lcs[j]
        p = self.p
        if p:
            a, b = cj, ci
        else:
            d = gcd(ci, cj)
            a, b = cj // d, ci // d
        out: dict = {}
        for e, c in self.polys[i].items():
            ne = _add(e, mi)
            out[ne] = out.get(ne, 0) + a * c
        for e, c in self.polys[j].items():
            ne = _add(e, mj)
            out[ne] = out.get(ne, 0) - b * c
        if p:
            return {e: c % p for e, c in out.items() if c % p}
        return {e: c for e, c in out.items() if c}

    def run(self, max_sugar: int | None = None):
        """Process pairs in order; stop before the first pair above ``max_sugar``."""
        while self.pairs:
            s, L, i, j = self.pairs[0]
            if (i, j) not in self.live:
                heapq.heappop(self.pairs)
                continue
            if max_sugar is not None and s > max_sugar:
                return
            heapq.heappop(self.pairs)
            self.live.discard((i, j))
            self.pairs_done += 1
            if self.pairs_done % 64 == 0:
                self._check_budget()
            h = self.reduce(self.spoly(i, j))
            if h:
                self.add(h, s)

    def reduced_basis(self) -> list:
        """Minimal, tail-reduced, monic basis as dicts sorted by leading monomial."""
        act = sorted(self.active, key=lambda i: self.key(self.lms[i]), reverse=True)
        minimal = []
        for i in act:
            if not any(_divides(self.lms[j], self.lms[i]) for j in minimal):
                minimal.append(i)
        saved = self.active
        out = []
        for i in minimal:
            self.active = [j for j in minimal if j != i]
            lm = self.lms[i]
            out.append(self._monic(self.reduce(self.polys[i], keep=lm), lm))
        self.active = saved
        return out

    def _monic(self, f: dict, lm) -> dict:
        lc = f[lm]
        if self.p:
            inv = pow(lc, -1, self.p)
            return {e: c * inv % self.p for e, c in f.items()}
        return {e: (c // lc if c % lc == 0 else Fraction(c, lc)) for e, c in f.items()}


def _prepare(engine: _Engine, f: Poly) -> dict:
    if engine.p:
        return dict(f.terms)
    return dict(f.primitive().terms)


def _make_engine(ring, order, weights, budget) -> _Engine:
    return _Engine(ring, order, weights, budget)


def _basis_from_engine(eng: _Engine, ring: Ring, order: MonomialOrder, complete=True) -> GroebnerBasis:
    polys = [Poly(ring, f) for f in eng.reduced_basis()]
    polys.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    return GroebnerBasis(ring, order, polys, True, complete, eng.stats())


def buchberger(
    gens: Sequence[Poly] | IdealBasis,
    order: MonomialOrder | None = None,
    *,
    weights: Sequence[int] | None = None,
    budget: Budget | None = None,
    max_degree: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    With ``max_degree`` the run stops before pairs of larger sugar degree and
    the result is flagged ``complete=False`` if any pair was left over.
    """
    if isinstance(gens, IdealBasis):
        weights = weights if weights is not None else gens.weights
        ring, gens = gens.ring, gens.gens
    else:
        gens = list(gens)
        if not gens:
            raise ValueError("need at least one generator (or pass an IdealBasis)")
        ring = gens[0].ring
    order = order or degrevlex(ring.nvars)
    eng = _make_engine(ring, order, weights, budget)
    for g in sorted((g for g in gens if not g.is_zero()), key=lambda g: (g.degree(), g.to_string())):
        h = eng.reduce(_prepare(eng, g))
        if h:
            eng.add(h)
    eng.run(max_degree)
    leftover = any(pr in eng.live for pr in ((i, j) for _, _, i, j in eng.pairs))
    return _basis_from_engine(eng, ring, order, complete=not leftover)


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    if f.ring != G.ring:
        raise ValueError("polynomial and basis live in different rings")
    eng = _make_engine(G.ring, G.order, None, None)
    for g in G.polys:
        eng._store(_prepare(eng, g), 0)
        eng.active.append(len(eng.polys) - 1)
    # over Q the remainder is returned primitive: it is defined up to a unit
    return Poly(G.ring, eng.reduce(_prepare(eng, f)) if f.terms else {})


def in_ideal(f: Poly, G: GroebnerBasis) -> bool:
    return normal_form(f, G).is_zero()


def ideals_equal(G1: GroebnerBasis, G2: GroebnerBasis) -> bool:
    """Mutual containment by normal forms."""
    if G1.ring != G2.ring:
        return False
    return all(in_ideal(g, G2) for g in G1.polys) and all(in_ideal(g, G1) for g in G2.polys)


# ---------------------------------------------------------------- kernels


@dataclass
class KernelResult:
    ideal: IdealBasis
    basis: GroebnerBasis  # in the target ring, restricted order
    stats: dict = field(default_factory=dict)


def _stack_orders(ny: int, x_order: MonomialOrder) -> MonomialOrder:
    nx = x_order.nvars
    y = degrevlex(ny)
    rows = [tuple(r) + (0,) * nx for r in y.rows]
    rows += [(0,) * ny + tuple(r) for r in x_order.rows]
    return MonomialOrder("block", tuple(rows), ny)


def kernel_of_map(
    smap: SectionMap,
    *,
    use_lex: bool = False,
    x_order: MonomialOrder | None = None,
    budget: Budget | None = None,
    check: bool = True,
) -> KernelResult:
    """Ideal of the image closure of x_i -> s_i(y), by elimination over (s_i - x_i).

    The default order is a block order with the y-block first (degrevlex in
    each block); ``use_lex`` switches to pure lex y > x.  ``x_order`` sets the
    order on the x-block, and the returned basis is a Groebner basis for it.
    """
    ny, nx = smap.source.nvars, len(smap.sections)
    names = tuple(smap.source.names) + tuple(smap.target.names)
    if len(set(names)) != len(names):
        names = tuple(f"_y{i}" for i in range(ny)) + tuple(smap.target.names)
    big = Ring(names, smap.source.modulus)
    D = smap.degree
    weights = (1,) * ny + (D,) * nx
    if use_lex:
        order = lex(ny + nx)
        x_order = lex(nx)
    else:
        x_order = x_order or degrevlex(nx)
        order = _stack_orders(ny, x_order)
    gens = []
    for i, s in enumerate(smap.sections):
        terms = {e + (0,) * nx: c for e, c in s.terms.items()}
        xe = [0] * (ny + nx)
        xe[ny + i] = 1
        terms[tuple(xe)] = terms.get(tuple(xe), 0) - 1
        gens.append(Poly(big, terms))
    G = buchberger(gens, order, weights=weights, budget=budget)
    tgt = smap.target
    kept = []
    for g in G.polys:
        if all(not any(e[:ny]) for e in g.terms):
            kept.append(Poly(tgt, {e[ny:]: c for e, c in g.terms.items()}))
    if check:
        for g in kept:
            if not substitute(g, smap).is_zero():
                raise AssertionError(f"kernel generator {g} does not vanish on the sections")
    Gx = GroebnerBasis(tgt, x_order, kept, True, True, G.stats)
    return KernelResult(IdealBasis(tgt, list(kept)), Gx, G.stats)


# ---------------------------------------------------------------- generator degrees


@dataclass
class GeneratorDegrees:
    counts: dict
    maxdeg: int | None

    def as_dict(self) -> dict:
        return {"counts": {str(k): v for k, v in sorted(self.counts.items())}, "maxdeg": self.maxdeg}


def minimal_generator_degrees(
    I: IdealBasis | Sequence[Poly], budget: Budget | None = None
) -> GeneratorDegrees:
    """Degrees of a minimal homogeneous generating set.

    Generators are taken in increasing degree; one counts iff it is not in the
    ideal of those kept so far, tested against a Groebner basis truncated at
    its degree.  The kept set is minimal, so the counts equal
    dim I_d - dim (S_1 I_{d-1}).
    """
    if not isinstance(I, IdealBasis):
        gens = list(I)
        if not gens:
            return GeneratorDegrees({}, None)
        I = IdealBasis(gens[0].ring, gens)
    ring = I.ring
    eng = _make_engine(ring, degrevlex(ring.nvars), I.weights, budget)
    counts: dict = {}
    gens = sorted(I.gens, key=lambda g: (max(eng.wdeg(e) for e in g.terms), g.to_string()))
    for g in gens:
        d = max(eng.wdeg(e) for e in g.terms)
        eng.run(d)
        h = eng.reduce(_prepare(eng, g))
        if h:
            counts[d] = counts.get(d, 0) + 1
            eng.add(h, d)
    return GeneratorDegrees(counts, max(counts) if counts else None)


# ---------------------------------------------------------------- partial elimination


def elimination_order_for(n: int, var: int) -> MonomialOrder:
    """Compare the exponent of ``var`` first, then degrevlex on the others."""
    first = tuple(1 if i == var else 0 for i in range(n))
    rest = [i for i in range(n) if i != var]
    rows = [first, tuple(0 if i == var else 1 for i in range(n))]
    for i in reversed(rest[1:]):
        rows.append(tuple(-1 if j == i else 0 for j in range(n)))
    return MonomialOrder("block", tuple(rows), None)


@dataclass
class PEIFiltration:
    var: int
    ring: Ring  # ring without the eliminated variable
    ks: list  # GroebnerBasis for K_0..K_s
    s: int
    max_var_degree: int

    def is_unit(self, i: int) -> bool:
        return self.ks[min(i, self.s)].is_unit()


def _drop(e, var):
    return e[:var] + e[var + 1 :]


def partial_elimination(
    I: IdealBasis | GroebnerBasis,
    var: int = 0,
    budget: Budget | None = None,
) -> PEIFiltration:
    """K_i(I) with respect to variable ``var`` for i up to the stabilization number.

    From a Groebner basis G in an order that compares the ``var``-exponent
    first, K_i is generated (as a Groebner basis) by the top ``var``-coefficients
    of the elements of G whose ``var``-degree is at most i.
    """
    ring = I.ring
    n = ring.nvars
    if not 0 <= var < n:
        raise ValueError("variable index out of range")
    order = elimination_order_for(n, var)
    if isinstance(I, GroebnerBasis) and I.order == order:
        G = I
    else:
        gens = I.gens if isinstance(I, IdealBasis) else I.polys
        if not gens:
            G = GroebnerBasis(ring, order, [])
        else:
            G = buchberger(list(gens), order, budget=budget)
    small = Ring(_drop(ring.names, var), ring.modulus)
    sorder = degrevlex(n - 1)
    tops = []
    for g in G.polys:
        d = max(e[var] for e in g.terms)
        top = Poly(small, {_drop(e, var): c for e, c in g.terms.items() if e[var] == d})
        tops.append((d, top))
    D = max((d for d, _ in tops), default=0)

    def K(i):
        polys = [t for d, t in tops if d <= i]
        if not polys:
            return GroebnerBasis(small, sorder, [])
        return buchberger(polys, sorder, budget=budget)

    ks = [K(i) for i in range(D + 1)]
    s = D
    while s > 0 and _same(ks[s - 1], ks[D]):
        s -= 1
    return PEIFiltration(var, small, ks[: s + 1], s, D)


def _same(A: GroebnerBasis, B: GroebnerBasis) -> bool:
    if len(A.polys) != len(B.polys):
        return False
    return [g.terms for g in A.polys] == [g.terms for g in B.polys]
