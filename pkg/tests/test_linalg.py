from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from regsurf.linalg import (
    ExactMatrix,
    determinant_exact,
    from_csv,
    is_invertible_exact,
    nullspace_exact,
    nullspace_mod_p,
    rank_dense_exact,
    rank_mod_p,
    rank_numpy_mod_p,
    rank_sparse_mod_p,
    to_csv,
)

P = 1073741827
small = st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=6)


def _fraction_rank(rows):
    A = [[Fraction(v) for v in r] for r in rows]
    r = 0
    for c in range(len(A[0])):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


@given(small)
def test_bareiss_rank_matches_fraction_elimination(rows):
    M = ExactMatrix.from_rows(rows)
    assert rank_dense_exact(M) == _fraction_rank(rows)


@given(small)
def test_modular_ranks_agree(rows):
    M = ExactMatrix.from_rows(rows)
    r = rank_dense_exact(M)
    assert rank_mod_p(M, P) == r  # small entries: P divides no minor
    assert rank_sparse_mod_p(M.reduce_mod(P, "sparse")) == r
    assert rank_numpy_mod_p(M.reduce_mod(P).to_numpy(), P) == r


def test_determinant():
    M = ExactMatrix.from_rows([[2, 0, 1], [1, 3, 2], [1, 1, 1]])
    assert determinant_exact(M) == 2 * (3 - 2) - 0 + 1 * (1 - 3)
    assert determinant_exact(ExactMatrix.identity(5)) == 1


def test_rank_over_f3_differs_from_q():
    M = ExactMatrix.from_rows([[1, 2], [2, 1]])
    assert rank_dense_exact(M) == 2 and rank_mod_p(M, 3) == 1


def test_invertibility_escalates_to_exact():
    sing = ExactMatrix.from_rows([[1, 2], [2, 4]])
    cert = is_invertible_exact(sing)
    assert not cert.verdict and cert.method == "exact-elimination" and len(cert.primes) == 4
    ok = is_invertible_exact(ExactMatrix.from_rows([[1, 2], [3, 4]]))
    assert ok.verdict and ok.method == "modular-determinant"
    with pytest.raises(ValueError):
        is_invertible_exact(ExactMatrix.from_rows([[1, 2, 3]]))


def test_invertibility_is_seeded():
    M = ExactMatrix.from_rows([[1, 2], [3, 4]])
    assert is_invertible_exact(M, seed=3).as_dict() == is_invertible_exact(M, seed=3).as_dict()


@given(small)
def test_nullspaces(rows):
    M = ExactMatrix.from_rows(rows)
    for v in nullspace_exact(M):
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    assert len(nullspace_exact(M)) == M.ncols - rank_dense_exact(M)
    for v in nullspace_mod_p(M, 7):
        assert all(sum(a * b for a, b in zip(r, v)) % 7 == 0 for r in rows)


@given(small, st.sampled_from([0, 3, 7]))
def test_csv_roundtrip(rows, p):
    M = ExactMatrix.from_rows(rows, modulus=p)
    assert from_csv(to_csv(M)) == M
    assert to_csv(M).splitlines()[0] == f"{M.nrows},{M.ncols},{p}"


def test_shape_validation():
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, dense=[[1, 2]])
    with pytest.raises(ValueError):
        ExactMatrix(1, 1, modulus=4, dense=[[1]])


def test_numpy_rank_guard():
    with pytest.raises(ValueError):
        rank_numpy_mod_p(np.eye(2, dtype=np.int64), 2**31 + 11)
