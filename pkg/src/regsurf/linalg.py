"""Exact linear algebra: fraction-free elimination over Z/Q and rank over F_p.

Two storages share one :class:`ExactMatrix` type:

* ``dense``  -- tuple of row tuples holding ints or Fractions (modulus 0), or
  residues (modulus p);
* ``sparse`` -- dict ``{row: {col: residue}}`` over F_p, no stored zeros.

Modular work on dense blocks goes through numpy int64, which is exact for
p < 2^31 (products stay below 2^62).
"""
from __future__ import annotations

import io
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .arith import is_prime, random_prime

MAX_NUMPY_PRIME = 2**31


class ExactMatrix:
    """Immutable exact matrix (dense Z/Q/F_p or sparse F_p)."""

    __slots__ = ("nrows", "ncols", "modulus", "storage", "_dense", "_sparse")

    def __init__(self, nrows: int, ncols: int, *, modulus: int = 0, dense=None, sparse=None):
        if (dense is None) == (sparse is None):
            raise ValueError("give exactly one of dense= or sparse=")
        if modulus and not is_prime(modulus):
            raise ValueError(f"{modulus} is not prime")
        self.nrows, self.ncols, self.modulus = nrows, ncols, modulus
        if dense is not None:
            rows = tuple(tuple(r) for r in dense)
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise ValueError("dense data does not match the stated shape")
            if modulus:
                rows = tuple(tuple(int(v) % modulus for v in r) for r in rows)
            self.storage, self._dense, self._sparse = "dense", rows, None
        else:
            if not modulus:
                raise ValueError("sparse storage is for prime fields only")
            clean = {}
            for r, row in sparse.items():
                if not 0 <= r < nrows:
                    raise IndexError(f"row {r} out of range")
                kept = {}
                for c, v in row.items():
                    if not 0 <= c < ncols:
                        raise IndexError(f"column {c} out of range")
                    v %= modulus
                    if v:
                        kept[c] = v
                if kept:
                    clean[r] = kept
            self.storage, self._dense, self._sparse = "sparse", None, clean

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], modulus: int = 0) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, modulus=modulus, dense=rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, modulus: int = 0) -> "ExactMatrix":
        return cls(nrows, ncols, modulus=modulus, dense=[[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int, modulus: int = 0) -> "ExactMatrix":
        return cls(n, n, modulus=modulus, dense=[[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def rows(self) -> list:
        if self._dense is not None:
            return [list(r) for r in self._dense]
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, row in self._sparse.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def __getitem__(self, rc):
        r, c = rc
        if self._dense is not None:
            return self._dense[r][c]
        return self._sparse.get(r, {}).get(c, 0)

    def nnz(self) -> int:
        if self._sparse is not None:
            return sum(len(r) for r in self._sparse.values())
        return sum(1 for r in self._dense for v in r if v)

    def to_sparse(self) -> "ExactMatrix":
        if self.storage == "sparse":
            return self
        if not self.modulus:
            raise ValueError("reduce modulo a prime before converting to sparse")
        data = {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(self._dense)}
        return ExactMatrix(self.nrows, self.ncols, modulus=self.modulus, sparse=data)

    def to_dense(self) -> "ExactMatrix":
        if self.storage == "dense":
            return self
        return ExactMatrix(self.nrows, self.ncols, modulus=self.modulus, dense=self.rows())

    def reduce_mod(self, p: int, storage: str = "dense") -> "ExactMatrix":
        """Entry-wise reduction into F_p (rational entries need p-free denominators)."""
        if self.modulus and self.modulus != p:
            raise ValueError("matrix already lives over a different prime field")

        def red(v):
            if isinstance(v, Fraction):
                if v.denominator % p == 0:
                    raise ZeroDivisionError(f"denominator divisible by {p}")
                return v.numerator * pow(v.denominator, -1, p) % p
            return int(v) % p

        if self._sparse is not None:
            m = self
        else:
            m = ExactMatrix(self.nrows, self.ncols, modulus=p, dense=[[red(v) for v in r] for r in self._dense])
        return m.to_sparse() if storage == "sparse" else m.to_dense()

    def submatrix(self, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> "ExactMatrix":
        rows = list(range(self.nrows)) if rows is None else list(rows)
        cols = list(range(self.ncols)) if cols is None else list(cols)
        full = self.rows()
        return ExactMatrix(len(rows), len(cols), modulus=self.modulus, dense=[[full[r][c] for c in cols] for r in rows])

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.ncols != self.ncols or other.modulus != self.modulus:
            raise ValueError("incompatible matrices")
        return ExactMatrix.from_rows(self.rows() + other.rows(), self.modulus)

    def to_numpy(self) -> np.ndarray:
        if not self.modulus or self.modulus >= MAX_NUMPY_PRIME:
            raise ValueError("numpy export needs a prime below 2^31")
        a = np.zeros(self.shape, dtype=np.int64)
        if self._dense is not None:
            if self.nrows and self.ncols:
                a[:, :] = np.array(self._dense, dtype=np.int64)
        else:
            for r, row in self._sparse.items():
                for c, v in row.items():
                    a[r, c] = v
        return a

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.modulus == other.modulus and self.rows() == other.rows()

    def __hash__(self):
        return hash((self.shape, self.modulus, tuple(map(tuple, self.rows()))))

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, modulus={self.modulus}, storage={self.storage})"


# ---------------------------------------------------------------- over Z / Q


def _integer_rows(M: ExactMatrix) -> list:
    out = []
    for r in M.rows():
        d = 1
        for v in r:
            if isinstance(v, Fraction):
                d = lcm(d, v.denominator)
        out.append([int(v * d) for v in r])
    return out


def rank_dense_exact(M: ExactMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    if M.modulus:
        return rank_mod_p(M)
    A = _integer_rows(M)
    m, n = M.nrows, M.ncols
    rank, prev = 0, 1
    for c in range(n):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pr = A[rank]
        pv = pr[c]
        for i in range(rank + 1, m):
            row = A[i]
            a = row[c]
            if a:
                for j in range(c + 1, n):
                    row[j] = (pv * row[j] - a * pr[j]) // prev
            else:
                for j in range(c + 1, n):
                    if row[j]:
                        row[j] = pv * row[j] // prev
            row[c] = 0
        prev = pv
        rank += 1
    return rank


def determinant_exact(M: ExactMatrix) -> Fraction:
    """Determinant over Q (Bareiss); used only on small matrices."""
    if M.nrows != M.ncols:
        raise ValueError("determinant needs a square matrix")
    n = M.nrows
    rows = M.rows()
    scale = Fraction(1)
    A = []
    for r in rows:
        d = 1
        for v in r:
            if isinstance(v, Fraction):
                d = lcm(d, v.denominator)
        scale /= d
        A.append([int(v * d) for v in r])
    sign, prev = 1, 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        pv = A[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (pv * A[i][j] - A[i][c] * A[c][j]) // prev
            A[i][c] = 0
        prev = pv
    return sign * A[n - 1][n - 1] * scale if n else Fraction(1)


# ---------------------------------------------------------------- over F_p


def rank_numpy_mod_p(A: np.ndarray, p: int) -> int:
    """Rank of an int64 array over F_p, p < 2^31 (row echelon, first nonzero pivot)."""
    if p >= MAX_NUMPY_PRIME:
        raise ValueError("numpy path needs p < 2^31")
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = A[r, c:] * inv % p
        below = r + 1 + np.flatnonzero(A[r + 1 :, c])
        if below.size:
            A[below, c:] = (A[below, c:] - np.outer(A[below, c], A[r, c:])) % p
        r += 1
    return r


def rank_sparse_mod_p(M: ExactMatrix) -> int:
    """Rank over F_p with Markowitz-style pivoting.

    Pivot column = fewest nonzeros, pivot row inside it = fewest nonzeros;
    ties broken by (column, row) index so the pivot sequence is fixed.
    """
    p = M.modulus
    S = M.to_sparse()
    rows = {r: dict(v) for r, v in S._sparse.items()}
    cols: dict = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    rank = 0
    while cols:
        c = min(cols, key=lambda j: (len(cols[j]), j))
        cand = cols.pop(c)
        if not cand:
            continue
        pr = min(cand, key=lambda i: (len(rows[i]), i))
        prow = rows.pop(pr)
        for j in prow:
            if j != c:
                cols[j].discard(pr)
        inv = pow(prow[c], p - 2, p)
        for i in cand:
            if i == pr:
                continue
            row = rows[i]
            f = row.pop(c) * inv % p
            for j, v in prow.items():
                if j == c:
                    continue
                nv = (row.get(j, 0) - f * v) % p
                if nv:
                    if j not in row:
                        cols[j].add(i)
                    row[j] = nv
                elif j in row:
                    del row[j]
                    cols[j].discard(i)
        rank += 1
        for j in [j for j, s in cols.items() if not s]:
            del cols[j]
    return rank


def rank_mod_p(M: ExactMatrix, p: int | None = None) -> int:
    """Exact rank over F_p; M is reduced first when it lives over Q."""
    if p is None:
        p = M.modulus
    if not p:
        raise ValueError("no prime given")
    if M.modulus != p:
        M = M.reduce_mod(p)
    if M.nrows == 0 or M.ncols == 0:
        return 0
    density = M.nnz() / (M.nrows * M.ncols)
    if p < MAX_NUMPY_PRIME and density > 0.05 and M.nrows * M.ncols > 400:
        return rank_numpy_mod_p(M.to_numpy(), p)
    return rank_sparse_mod_p(M)


@dataclass
class InvertibilityCertificate:
    verdict: bool
    method: str
    primes: list = field(default_factory=list)
    rank: int | None = None

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "prime": self.primes[-1] if self.primes else None,
            "primes_tried": list(self.primes),
        }


def is_invertible_exact(
    M: ExactMatrix | None = None,
    *,
    builder=None,
    n: int | None = None,
    seed: int = 0,
    extra_primes: int = 3,
) -> InvertibilityCertificate:
    """Decide invertibility over Q.

    A nonzero determinant modulo any prime certifies invertibility over Q.
    One random 31-bit prime is tried first, then ``extra_primes`` more; only
    if all are singular is the exact Bareiss rank computed.

    Either pass ``M`` (integer matrix) or ``builder(p)`` returning the matrix
    reduced mod p, plus ``builder(0)`` for the exact fallback.
    """
    if M is not None:
        if M.nrows != M.ncols:
            raise ValueError("invertibility needs a square matrix")
        n = M.nrows

        def builder(p, _M=M):
            return _M if p == 0 else _M.reduce_mod(p)

    if n == 0:
        return InvertibilityCertificate(True, "empty", [], 0)
    rng = random.Random(seed)
    tried = []
    for _ in range(1 + extra_primes):
        p = random_prime(2**30, 2**31, rng)
        tried.append(p)
        Mp = builder(p)
        if rank_numpy_mod_p(Mp.to_numpy(), p) == n:
            return InvertibilityCertificate(True, "modular-determinant", tried, n)
    r = rank_dense_exact(builder(0))
    return InvertibilityCertificate(r == n, "exact-elimination", tried, r)


def nullspace_mod_p(M: ExactMatrix, p: int) -> list:
    """Basis of the right kernel over F_p, as lists of residues."""
    A = [list(r) for r in M.reduce_mod(p).rows()]
    m, n = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], p - 2, p)
        A[r] = [v * inv % p for v in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc] % p
        basis.append(v)
    return basis


def nullspace_exact(M: ExactMatrix) -> list:
    """Basis of the right kernel over Q (Fractions), via reduced row echelon form."""
    A = [[Fraction(v) for v in r] for r in M.rows()]
    m, n = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        A[r] = [v / pv for v in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    pivset = set(pivots)
    basis = []
    for fc in (c for c in range(n) if c not in pivset):
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        basis.append(v)
    return basis


# ---------------------------------------------------------------- CSV


def to_csv(M: ExactMatrix) -> str:
    """``rows,cols,modulus`` header (0 = exact), then row-major entries."""
    buf = io.StringIO()
    buf.write(f"{M.nrows},{M.ncols},{M.modulus}\n")
    for r in M.rows():
        buf.write(",".join(str(v) for v in r) + "\n")
    return buf.getvalue()


def from_csv(text: str) -> ExactMatrix:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    try:
        nrows, ncols, modulus = (int(x) for x in lines[0].split(","))
    except ValueError as exc:
        raise ValueError("bad CSV header, expected 'rows,cols,modulus'") from exc
    body = lines[1:]
    if len(body) != nrows:
        raise ValueError(f"header says {nrows} rows, found {len(body)}")
    rows = []
    for ln in body:
        vals = [Fraction(x) if "/" in x else int(x) for x in ln.split(",")]
        if len(vals) != ncols:
            raise ValueError(f"row has {len(vals)} entries, expected {ncols}")
        rows.append(vals)
    return ExactMatrix(nrows, ncols, modulus=modulus, dense=rows)
