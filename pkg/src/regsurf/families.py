"""Restricted power-product families f_i(u) and their coefficient rows.

Each family member is the image of an x-monomial under the X_{6k} sections,
restricted to y_0 = y_1 = 1.  Contexts:

* ``"L"``: degree 54k^2-21k+1 monomials with y_2-exponents = 2 (mod 3)
* ``"W"``: degree 54k^2-21k monomials with y_2-exponents = 1 (mod 3)
* ``"A"``: x_0^{t-3u} x_2^{3u}
* ``"B"``: x_0^{t-3u} x_1 x_2^{3u}  and  x_0^{t-6k+2-3u} x_2^{3u} x_4^{6k-1}
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import binom
from .polyring import Poly, PowerCache, Ring

Y2 = Ring(("y2",))


@dataclass(frozen=True)
class Window:
    """Arithmetic progression of y_2-exponents indexing matrix columns."""

    start: int
    step: int
    length: int

    def column(self, exponent: int) -> int:
        """0-based column of an exponent; ValueError if it is not in the window."""
        off = exponent - self.start
        if off % self.step:
            raise ValueError(f"exponent {exponent} is outside the residue class of {self}")
        c = off // self.step
        if not 0 <= c < self.length:
            raise ValueError(f"exponent {exponent} falls outside {self}")
        return c

    def exponent(self, column: int) -> int:
        return self.start + self.step * column


def b_values(k: int) -> tuple:
    return (6 * k * k - k - 1, 18 * k * k - 9 * k, 18 * k * k - 10 * k + 1, 12 * k * k - 7 * k)


def l_window(k: int) -> Window:
    return Window(36 * k * k - 18 * k + 2, 3, 54 * k * k - 27 * k + 3)


def w_window(k: int) -> Window:
    return Window(36 * k * k - 18 * k + 4, 3, 54 * k * k - 27 * k)


def monomial_exponent(k: int, context: str, i: int, u: int, t: int | None = None) -> tuple:
    """x-exponent vector (a_0..a_4) of the family member (context, i, u)."""
    kk = k * k
    if context in ("L", "W"):
        s = 0 if context == "L" else 1  # W monomials carry one fewer x_0
        table = {
            1: (54 * kk - 21 * k - 3 * u - 1 - s, 2, 3 * u, 0, 0),
            2: (54 * kk - 27 * k - 3 * u - s, 0, 3 * u + 2, 1, 6 * k - 2),
            3: (54 * kk - 27 * k - 3 * u + 1 - s, 1, 3 * u, 0, 6 * k - 1),
            4: (54 * kk - 33 * k - 3 * u + 3 - s, 0, 3 * u, 0, 12 * k - 2),
        }
        e = table.get(i)
    elif context == "A":
        if t is None:
            raise ValueError("context A needs t")
        e = (t - 3 * u, 0, 3 * u, 0, 0) if i == 1 else None
    elif context == "B":
        if t is None:
            raise ValueError("context B needs t")
        e = {
            1: (t - 3 * u, 1, 3 * u, 0, 0),
            2: (t - 6 * k + 2 - 3 * u, 0, 3 * u, 0, 6 * k - 1),
        }.get(i)
    else:
        raise ValueError(f"unknown context {context!r}")
    if e is None:
        raise ValueError(f"no family {i} in context {context}")
    if min(e) < 0:
        raise ValueError(f"u={u} is out of range for family {i} in context {context}")
    return e


def full_range(k: int, context: str, i: int, t: int | None = None) -> range:
    """Every u for which the family member exists (before any truncation)."""
    kk = k * k
    if context == "L":
        hi = {1: 18 * kk - 7 * k - 1, 2: 18 * kk - 9 * k, 3: 18 * kk - 9 * k, 4: 18 * kk - 11 * k + 1}
    elif context == "W":
        hi = {1: 18 * kk - 7 * k - 1, 2: 18 * kk - 9 * k - 1, 3: 18 * kk - 9 * k, 4: 18 * kk - 11 * k}
    elif context == "A":
        hi = {1: t // 3}
    elif context == "B":
        hi = {1: t // 3, 2: (t - 6 * k + 2) // 3}
    else:
        raise ValueError(f"unknown context {context!r}")
    if i not in hi:
        raise ValueError(f"no family {i} in context {context}")
    return range(0, hi[i] + 1)


def t_range(k: int, i: int) -> range:
    """Index range of T_i in the L-context (truncated at b_i(k))."""
    return range(0, b_values(k)[i - 1] + 1)


def w_range(k: int, i: int) -> range:
    """Index range of W_i(k): one fewer than T_i."""
    return range(0, b_values(k)[i - 1])


@lru_cache(maxsize=8)
def _x_cache(k: int) -> PowerCache:
    from .sections import sections

    return PowerCache(sections(6 * k, "X"))


def build_f(k: int, context: str, i: int, u: int, t: int | None = None) -> Poly:
    """f_i(u) by direct expansion of M(s_0..s_4) at y_0 = y_1 = 1, as a poly in y_2."""
    if k < 1:
        raise ValueError("k must be positive")
    if u not in full_range(k, context, i, t):
        raise ValueError(f"u={u} is out of range for family {i} in context {context}")
    e = monomial_exponent(k, context, i, u, t)
    img = _x_cache(k).image_of_monomial(e)
    acc: dict = {}
    for (_, _, c), v in img.terms.items():
        acc[(c,)] = acc.get((c,), 0) + v
    return Poly(Y2, acc)


def closed_form_terms(k: int, context: str, i: int, u: int, t: int | None = None) -> dict:
    """{y_2-exponent: coefficient} from the binomial closed forms."""
    kk = k * k
    if context in ("L", "W"):
        s = 0 if context == "L" else 1
        base = {
            1: 54 * kk - 21 * k - 1,
            2: 90 * kk - 45 * k + 2,
            3: 90 * kk - 39 * k + 2,
            4: 126 * kk - 57 * k + 5,
        }[i] - s
        n = 3 * u + 2 if i == 2 else 3 * u
    elif context == "A":
        base, n = t, 3 * u
    elif context == "B":
        c = 12 * kk - 6 * k + 1
        base, n = (t if i == 1 else 3 * c + t), 3 * u
    else:
        raise ValueError(f"unknown context {context!r}")
    lo = base - 3 * u
    return {lo + 3 * j: binom(n, j) for j in range(n + 1)}


def coeff_row(f: Poly, window: Window) -> list:
    """Dense coefficient vector of a y_2-polynomial over ``window``."""
    row = [0] * window.length
    for (e,), c in f.terms.items():
        row[window.column(e)] = c
    return row
