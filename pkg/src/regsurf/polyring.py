"""Sparse multivariate polynomials over Q or F_p, monomial orders, section maps.

A polynomial is a dict from exponent tuples to nonzero coefficients.  Over
the rationals coefficients are ints or Fractions; over F_p they are ints in
[0, p).  Monomial orders are matrix orders, so ``key(a + b) = key(a) + key(b)``
and multiplying by a monomial never reorders terms.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arith import is_prime

Exp = tuple  # tuple[int, ...]


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    names: tuple
    modulus: int = 0  # 0 = rationals

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if self.modulus and not is_prime(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @classmethod
    def of(cls, prefix: str, n: int, modulus: int = 0) -> "Ring":
        return cls(tuple(f"{prefix}{i}" for i in range(n)), modulus)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero_exp(self) -> Exp:
        return (0,) * self.nvars

    def normalize(self, c):
        """Canonical coefficient form (reduced mod p, or int when integral)."""
        if self.modulus:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, self.modulus) % self.modulus
            return int(c) % self.modulus
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def inv(self, c):
        if self.modulus:
            return pow(int(c), -1, self.modulus)
        return Fraction(1) / c if not isinstance(c, int) else Fraction(1, c)

    def gen(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def const(self, c) -> "Poly":
        return Poly(self, {self.zero_exp(): c})

    def with_modulus(self, p: int) -> "Ring":
        return Ring(self.names, p)


# ---------------------------------------------------------------- orders


@dataclass(frozen=True)
class MonomialOrder:
    """A matrix monomial order: compare ``rows @ exp`` lexicographically.

    ``kind`` is descriptive ("lex", "degrevlex", "block", "weighted").
    """

    kind: str
    rows: tuple
    split: int | None = None

    def key(self, e: Exp) -> tuple:
        return tuple(sum(r[i] * e[i] for i in range(len(e)) if r[i]) for r in self.rows)

    def key_fn(self):
        # sparse row form; keeps key() cheap inside tight loops
        sparse = [tuple((i, w) for i, w in enumerate(r) if w) for r in self.rows]

        def key(e):
            return tuple(sum(w * e[i] for i, w in r) for r in sparse)

        return key

    @property
    def nvars(self) -> int:
        return len(self.rows[0])


def _unit(n, i, v=1):
    r = [0] * n
    r[i] = v
    return r


def lex(n: int) -> MonomialOrder:
    return MonomialOrder("lex", tuple(tuple(_unit(n, i)) for i in range(n)))


def degrevlex(n: int, weights: Sequence[int] | None = None) -> MonomialOrder:
    w = list(weights) if weights is not None else [1] * n
    rows = [tuple(w)] + [tuple(_unit(n, i, -1)) for i in range(n - 1, 0, -1)]
    return MonomialOrder("degrevlex" if weights is None else "weighted", tuple(rows))


def block_order(n: int, split: int, weights: Sequence[int] | None = None) -> MonomialOrder:
    """Elimination order: variables ``< split`` dominate; degrevlex in each block."""
    if not 0 < split < n:
        raise ValueError("split must lie strictly inside the variable range")
    w = list(weights) if weights is not None else [1] * n
    rows = []
    for lo, hi in ((0, split), (split, n)):
        rows.append(tuple(w[i] if lo <= i < hi else 0 for i in range(n)))
        for i in range(hi - 1, lo, -1):
            rows.append(tuple(_unit(n, i, -1)))
    return MonomialOrder("block", tuple(rows), split)


# ---------------------------------------------------------------- polynomials


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping | None = None, _clean: bool = False):
        self.ring = ring
        if _clean:
            self.terms = dict(terms)
            return
        out = {}
        n = ring.nvars
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise RingMismatch(f"exponent {e} has wrong length for {n} variables")
            c = ring.normalize(c)
            if c:
                out[e] = c
        self.terms = out

    # construction helpers
    @classmethod
    def monomial(cls, ring: Ring, e: Exp, c=1) -> "Poly":
        return cls(ring, {tuple(e): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _check(self, other: "Poly"):
        if other.ring != self.ring:
            raise RingMismatch("polynomials live in different rings")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        p = self.ring.modulus
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = self.ring.normalize(v)
            else:
                out.pop(e, None)
        return Poly(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: self.ring.normalize(-c) for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if len(other) > len(self):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: dict = {}
        p = self.ring.modulus
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: self.ring.normalize(c) for e, c in out.items() if c}
        return Poly(self.ring, out, _clean=True)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = self.ring.normalize(c)
        if not c:
            return Poly(self.ring, {}, _clean=True)
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, m: Exp, c=1) -> "Poly":
        return Poly(
            self.ring,
            {tuple(x + y for x, y in zip(e, m)): v * c for e, v in self.terms.items()},
        )

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative powers are not supported")
        if len(self.terms) == 2:
            return self._binomial_power(n)
        result = self.ring.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _binomial_power(self, n: int) -> "Poly":
        # (a + b)^n term by term; O(n) terms instead of repeated products
        (ea, ca), (eb, cb) = self.terms.items()
        out = {}
        c = 1
        for j in range(n + 1):
            e = tuple(x * (n - j) + y * j for x, y in zip(ea, eb))
            out[e] = c * ca ** (n - j) * cb**j
            c = c * (n - j) // (j + 1)
        return Poly(self.ring, out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # inspection
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        if not self.terms:
            return True
        w = weights or [1] * self.ring.nvars
        degs = {sum(a * b for a, b in zip(e, w)) for e in self.terms}
        return len(degs) == 1

    def sorted_terms(self, order: MonomialOrder | None = None) -> list:
        order = order or degrevlex(self.ring.nvars)
        key = order.key_fn()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder):
        key = order.key_fn()
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total += v
        if self.ring.modulus:
            total %= self.ring.modulus
        return total

    def restrict(self, values: Mapping[int, int]) -> "Poly":
        """Set the variables with indices in ``values`` to constants (kept in the ring)."""
        out: dict = {}
        for e, c in self.terms.items():
            v = c
            e = list(e)
            for i, val in values.items():
                if e[i]:
                    v = v * val ** e[i]
                    e[i] = 0
            t = tuple(e)
            out[t] = out.get(t, 0) + v
        return Poly(self.ring, out)

    def primitive(self) -> "Poly":
        """Integer primitive form with positive leading coefficient (rationals only)."""
        if self.ring.modulus or not self.terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        lead = self.sorted_terms()[0][0]
        if ints[lead] < 0:
            g = -g
        return Poly(self.ring, {e: c // g for e, c in ints.items()}, _clean=True)

    def to_string(self, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            sign = "-" if (not self.ring.modulus and c < 0) else "+"
            a = abs(c) if not self.ring.modulus else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Poly({self.to_string()!r})"


def mon(F: Poly) -> set:
    """The exact monomial support of a nonzero polynomial."""
    if F.is_zero():
        raise ValueError("mon() is only defined for nonzero polynomials")
    return set(F.terms)


# ---------------------------------------------------------------- section maps


@dataclass(frozen=True)
class SectionMap:
    """Ring map x_i -> s_i from k[x_0..x_r] to k[y_0..y_n]."""

    source: Ring  # the y-ring (domain of the rational map)
    sections: tuple
    target_names: tuple = field(default=())

    def __post_init__(self):
        secs = tuple(self.sections)
        object.__setattr__(self, "sections", secs)
        if not secs:
            raise ValueError("a section map needs at least one section")
        if all(s.is_zero() for s in secs):
            raise ValueError("at least one section must be nonzero")
        degs = {s.degree() for s in secs if not s.is_zero()}
        if len(degs) != 1 or not all(s.is_homogeneous() for s in secs):
            raise ValueError("sections must be homogeneous of a common degree")
        if not self.target_names:
            object.__setattr__(self, "target_names", tuple(f"x{i}" for i in range(len(secs))))
        for s in secs:
            if s.ring != self.source:
                raise RingMismatch("section outside the source ring")

    @property
    def degree(self) -> int:
        return max(s.degree() for s in self.sections)

    @property
    def target(self) -> Ring:
        return Ring(self.target_names, self.source.modulus)

    def with_modulus(self, p: int) -> "SectionMap":
        ring = self.source.with_modulus(p)
        return SectionMap(ring, tuple(Poly(ring, s.terms) for s in self.sections), self.target_names)

    def to_text(self) -> str:
        lines = ["ring " + " ".join(self.source.names) + ";"]
        lines.append(
            "map "
            + "; ".join(f"{x} = {s.to_string()}" for x, s in zip(self.target_names, self.sections))
            + ";"
        )
        return "\n".join(lines) + "\n"


class PowerCache:
    """Memoized powers of the sections of a map."""

    def __init__(self, smap: SectionMap):
        self.smap = smap
        self._cache: dict = {}

    def power(self, i: int, e: int) -> Poly:
        key = (i, e)
        if key not in self._cache:
            self._cache[key] = self.smap.sections[i] ** e
        return self._cache[key]

    def image_of_monomial(self, e: Exp) -> Poly:
        out = self.smap.source.const(1)
        for i, k in enumerate(e):
            if k:
                out = out * self.power(i, k)
        return out


def substitute(F: Poly, smap: SectionMap, cache: PowerCache | None = None) -> Poly:
    """Image of F under x_i -> s_i, expanded exactly."""
    if F.ring.nvars != len(smap.sections):
        raise RingMismatch(
            f"polynomial has {F.ring.nvars} variables, map has {len(smap.sections)} sections"
        )
    cache = cache or PowerCache(smap)
    acc: dict = {}
    for e, c in F.terms.items():
        for ye, yc in cache.image_of_monomial(e).terms.items():
            acc[ye] = acc.get(ye, 0) + c * yc
    return Poly(smap.source, acc)


# ---------------------------------------------------------------- text grammar

_TERM_RE = re.compile(r"([+-]?)([^+-]+)")


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse ``3*y0^2*y1 - y2 + 7`` style input (integer coefficients)."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial")
    index = {n: i for i, n in enumerate(ring.names)}
    terms: dict = {}
    pos = 0
    for m in _TERM_RE.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse {text!r} near position {pos}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign
        e = [0] * ring.nvars
        for factor in m.group(2).split("*"):
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            base, _, power = factor.partition("^")
            k = int(power) if power else 1
            if base.isdigit():
                coeff *= int(base) ** k
            elif base in index:
                e[index[base]] += k
            else:
                raise ValueError(f"unknown symbol {base!r}")
        t = tuple(e)
        terms[t] = terms.get(t, 0) + coeff
    if pos != len(s):
        raise ValueError(f"trailing input in {text!r}")
    return Poly(ring, terms)


def parse_section_map(text: str, modulus: int = 0) -> SectionMap:
    """Parse ``ring y0 y1 y2; map x0 = y1^5*y2; x1 = ...;``.

    Lines starting with ``#`` are comments.
    """
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    stmts = [s.strip() for s in body.split(";") if s.strip()]
    if not stmts or not stmts[0].startswith("ring"):
        raise ValueError("section map must start with a 'ring' declaration")
    names = stmts[0].split()[1:]
    if not names:
        raise ValueError("ring declaration lists no variables")
    ring = Ring(tuple(names), modulus)
    targets, secs = [], []
    for i, st in enumerate(stmts[1:]):
        if i == 0:
            if not st.startswith("map"):
                raise ValueError("expected 'map' after the ring declaration")
            st = st[3:].strip()
        lhs, eq, rhs = st.partition("=")
        if not eq:
            raise ValueError(f"expected 'x = poly', got {st!r}")
        targets.append(lhs.strip())
        secs.append(parse_poly(rhs, ring))
    return SectionMap(ring, tuple(secs), tuple(targets))


def monomials_of_degree(n: int, d: int) -> Iterable[Exp]:
    """All exponent vectors of length n and total degree d (lex-descending)."""
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            yield (a,) + rest
