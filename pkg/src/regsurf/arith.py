"""Exact scalar arithmetic: binomials, prime fields, Lucas reduction.

Rationals are :class:`fractions.Fraction` (always normalized, positive
denominator); integers are Python ints.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "Fraction",
    "Fp",
    "binom",
    "binom_mod_p",
    "hermite_rows",
    "reduce_mod_lattice",
    "is_prime",
    "mod3_vanishing_criterion",
    "random_prime",
    "PREDICTS_ZERO",
    "NO_PREDICTION",
]

PREDICTS_ZERO = "predicts_zero"
NO_PREDICTION = "no_prediction"

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(lo: int, hi: int, rng: random.Random | None = None) -> int:
    rng = rng or random.Random()
    while True:
        n = rng.randrange(lo, hi) | 1
        if is_prime(n):
            return n


def binom(n: int, k: int) -> int:
    """C(n, k) by the multiplicative formula; 0 when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binom needs nonnegative arguments")
    if k > n:
        return 0
    k = min(k, n - k)
    num, den = 1, 1
    for i in range(1, k + 1):
        num *= n - k + i
        den *= i
        g = gcd(num, den)
        if g > 1:
            num //= g
            den //= g
    return num // den


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p via Lucas: product of base-p digit binomials."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 0 or k < 0:
        raise ValueError("binom_mod_p needs nonnegative arguments")
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        result = result * _small_binom_mod(ni, ki, p) % p
        n //= p
        k //= p
    return result


def _small_binom_mod(n: int, k: int, p: int) -> int:
    # n < p, so every factor below is invertible mod p
    k = min(k, n - k)
    num, den = 1, 1
    for i in range(1, k + 1):
        num = num * (n - k + i) % p
        den = den * i % p
    return num * pow(den, p - 2, p) % p


def mod3_vanishing_criterion(form: str, a: int, b: int) -> str:
    """Sufficient conditions for C(3a, b) or C(3a+2, b) to vanish mod 3.

    ``form`` is ``"3a"`` or ``"3a+2"``. Returns PREDICTS_ZERO when one of the
    listed digit conditions holds, NO_PREDICTION otherwise; the converse is
    not claimed.
    """
    if a < 0 or b < 0:
        raise ValueError("a and b must be nonnegative")
    if form == "3a":
        hit = b % 3 != 0 or (a % 3 == 0 and b % 9 != 0) or (a % 9 == 0 and b % 27 != 0)
    elif form == "3a+2":
        n = 3 * a + 2
        hit = (
            (n >= 9 and b < 9 and n - b < 9)
            or (n >= 18 and b < 9 and n - b < 18)
            or (n >= 27 and b < 27 and n - b < 27)
        )
    else:
        raise ValueError(f"unknown form {form!r}")
    return PREDICTS_ZERO if hit else NO_PREDICTION


def carry_count(n: int, k: int, p: int) -> int:
    """p-adic valuation of C(n, k) via Legendre's floor sums (Kummer carries)."""

    def legendre(x: int) -> int:
        s, q = 0, p
        while q <= x:
            s += x // q
            q *= p
        return s

    return legendre(n) - legendre(k) - legendre(n - k)


@dataclass(frozen=True)
class Fp:
    """Residue class modulo a prime."""

    value: int
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return Fp(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * Fp(o, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"


def hermite_rows(vectors) -> list:
    """Row echelon basis of the integer lattice spanned by ``vectors``.

    Pivots are positive and entries above each pivot are reduced into
    [0, pivot), so the result is the Hermite normal form of the lattice.
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    out = []
    for c in range(n):
        live = [r for r in rows if r[c]]
        rows = [r for r in rows if not r[c]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[c] // piv[c]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[c]:
                    nxt.append(r)
                elif any(r):
                    rows.append(r)
            live = nxt
        if live:
            piv = live[0]
            if piv[c] < 0:
                piv = [-a for a in piv]
            out.append(piv)
    for i, r in enumerate(out):
        c = next(j for j, a in enumerate(r) if a)
        for h in range(i):
            q = out[h][c] // r[c]
            if q:
                out[h] = [a - q * b for a, b in zip(out[h], r)]
    return out


def reduce_mod_lattice(v, hnf: list) -> tuple:
    """Canonical representative of ``v`` modulo the lattice with basis ``hnf``."""
    v = list(v)
    for r in hnf:
        c = next(j for j, a in enumerate(r) if a)
        q = v[c] // r[c]
        if q:
            v = [a - q * b for a, b in zip(v, r)]
    return tuple(v)
