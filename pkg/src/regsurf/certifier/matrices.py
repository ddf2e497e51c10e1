"""Certificate matrices N_i(k), N(k), L(k), W(k)."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from ..arith import binom_mod_p
from ..families import (
    b_values,
    build_f,
    closed_form_terms,
    coeff_row,
    l_window,
    t_range,
    w_range,
    w_window,
)
from ..linalg import ExactMatrix, from_csv

WHICH = ("N1", "N2", "N3", "N4", "N", "L", "W")
MODES = ("closed_form", "expansion")


@dataclass(frozen=True)
class CertMatrixSpec:
    k: int
    which: str = "L"
    mode: str = "closed_form"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.which not in WHICH:
            raise ValueError(f"which must be one of {WHICH}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")

    @property
    def b(self) -> tuple:
        return b_values(self.k)

    @property
    def dims(self) -> tuple:
        k = self.k
        n = 54 * k * k - 27 * k
        if self.which == "N":
            return (n + 4, n + 3)
        if self.which == "L":
            return (n + 3, n + 3)
        if self.which == "W":
            return (n, n)
        i = int(self.which[1])
        return (self.b[i - 1] + 1, n + 3)


def _binomial_row_mod(n: int, p: int) -> list:
    if p > n:
        row, c = [1], 1
        for j in range(n):
            c = c * (n - j) % p * pow(j + 1, p - 2, p) % p
            row.append(c)
        return row
    return [binom_mod_p(n, j, p) for j in range(n + 1)]


def _closed_rows(k: int, i: int, modulus: int) -> list:
    win = l_window(k)
    rows = []
    for u in t_range(k, i):
        if modulus:
            n = 3 * u + 2 if i == 2 else 3 * u
            lo = min(closed_form_terms(k, "L", i, 0)) - 3 * u  # lowest exponent of row u
            coeffs = _binomial_row_mod(n, modulus)
            row = [0] * win.length
            start = win.column(lo)
            row[start : start + n + 1] = coeffs
            rows.append(row)
        else:
            row = [0] * win.length
            for e, c in closed_form_terms(k, "L", i, u).items():
                row[win.column(e)] = c
            rows.append(row)
    return rows


def _expansion_rows(k: int, i: int, context: str) -> list:
    win = l_window(k) if context == "L" else w_window(k)
    rng = t_range(k, i) if context == "L" else w_range(k, i)
    return [coeff_row(build_f(k, context, i, u), win) for u in rng]


def _slice_w(rows: list) -> list:
    # drop the last row, the first column and the last two columns
    return [r[1:-2] for r in rows[:-1]]


def build_rows(spec: CertMatrixSpec, modulus: int = 0) -> list:
    k, which = spec.k, spec.which
    if spec.mode == "closed_form" or modulus:
        blocks = [_closed_rows(k, i, modulus) for i in range(1, 5)]
        if which == "W":
            blocks = [_slice_w(b) for b in blocks]
    else:
        ctx = "W" if which == "W" else "L"
        blocks = [_expansion_rows(k, i, ctx) for i in range(1, 5)]
    if which in ("N1", "N2", "N3", "N4"):
        return blocks[int(which[1]) - 1]
    rows = [r for b in blocks for r in b]
    if which == "L":
        rows = rows[1:]
    return rows


def build_matrix(spec: CertMatrixSpec, modulus: int = 0) -> ExactMatrix:
    """N_i / N / L / W for one k; entries reduced mod ``modulus`` when given.

    With a modulus the closed forms are evaluated directly in F_p.
    """
    rows = build_rows(spec, modulus)
    nr, nc = spec.dims
    return ExactMatrix(nr, nc, modulus=modulus, dense=rows)


def build_numpy_mod_p(k: int, which: str, p: int) -> np.ndarray:
    return np.array(build_rows(CertMatrixSpec(k, which), p), dtype=np.int64).reshape(CertMatrixSpec(k, which).dims)


def fixture(which: str) -> ExactMatrix:
    """The displayed 30x30 (L) or 27x27 (W) matrix over F_3, k = 1."""
    if which not in ("L", "W"):
        raise ValueError("fixtures exist for L and W only")
    text = resources.files("regsurf.data").joinpath(f"{which}1_mod3.csv").read_text()
    return from_csv(text)


def build_matrix_mod3(k: int, which: str):
    """Matrix over F_3 plus, for k = 1 and which in {L, W}, the diff against the fixture.

    The diff is a list of ``(row, col, built, fixture)`` with 1-based indices.
    """
    M = build_matrix(CertMatrixSpec(k, which), modulus=3)
    diff = None
    if k == 1 and which in ("L", "W"):
        F = fixture(which)
        diff = [
            (r + 1, c + 1, M[r, c], F[r, c])
            for r in range(M.nrows)
            for c in range(M.ncols)
            if M[r, c] != F[r, c]
        ]
    return M, diff
