import pytest

from regsurf.arith import binom
from regsurf.certifier.matrices import (
    WHICH,
    CertMatrixSpec,
    build_matrix,
    build_matrix_mod3,
    build_rows,
    fixture,
)
from regsurf.families import (
    Window,
    b_values,
    build_f,
    closed_form_terms,
    full_range,
    l_window,
    w_window,
)


def test_window_mapping():
    w = l_window(1)
    assert (w.start, w.step, w.length) == (20, 3, 30)
    assert w.column(20) == 0 and w.exponent(29) == 107
    with pytest.raises(ValueError):
        w.column(21)
    with pytest.raises(ValueError):
        w.column(110)
    assert w_window(1) == Window(22, 3, 27)


def test_b_values_sum():
    for k in range(1, 11):
        assert sum(b + 1 for b in b_values(k)) == 54 * k * k - 27 * k + 4


def test_expansion_examples():
    assert build_f(1, "L", 1, 0).terms == {(32,): 1}
    assert build_f(1, "L", 1, 1).terms == {(29,): 1, (32,): 3, (35,): 3, (38,): 1}
    assert build_f(1, "L", 2, 0).terms == {(47,): 1, (50,): 2, (53,): 1}
    with pytest.raises(ValueError):
        build_f(1, "L", 1, 999)


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("ctx", ["L", "W"])
def test_closed_forms_equal_expansions(k, ctx):
    for i in range(1, 5):
        for u in list(full_range(k, ctx, i))[:: max(1, k * 3)]:
            got = {e[0]: c for e, c in build_f(k, ctx, i, u).terms.items()}
            assert got == closed_form_terms(k, ctx, i, u)


@pytest.mark.parametrize("k", range(1, 11))
def test_dimension_law(k):
    n = 54 * k * k - 27 * k
    assert CertMatrixSpec(k, "N").dims == (n + 4, n + 3)
    assert CertMatrixSpec(k, "L").dims == (n + 3, n + 3)
    assert CertMatrixSpec(k, "W").dims == (n, n)


def test_k1_shapes_and_units():
    assert build_matrix(CertMatrixSpec(1, "N")).shape == (31, 30)
    N1 = build_matrix(CertMatrixSpec(1, "N1"))
    assert [c for c in range(30) if N1[0, c]] == [4]  # unit at column 5
    N4 = build_matrix(CertMatrixSpec(1, "N4"))
    assert [c for c in range(30) if N4[0, c]] == [18]  # column 30k^2-13k+2 = 19


@pytest.mark.parametrize("k", [1, 2, 3])
def test_row_sum_law(k):
    for i in range(1, 5):
        rows = build_rows(CertMatrixSpec(k, f"N{i}"))
        for u, r in enumerate(rows):
            e = 3 * u + 2 if i == 2 else 3 * u
            assert sum(r) == 2**e


@pytest.mark.parametrize("k", [1, 2, 3])
def test_closed_form_equals_expansion(k):
    # criterion 9(a)
    for which in WHICH:
        a = build_matrix(CertMatrixSpec(k, which, "closed_form"))
        b = build_matrix(CertMatrixSpec(k, which, "expansion"))
        assert a == b, which


@pytest.mark.parametrize("k", [1, 2, 3])
def test_slicing_equals_w_expansion(k):
    # criterion 9(b): W by deleting rows/columns of the N_i equals the direct W expansion
    sliced = build_matrix(CertMatrixSpec(k, "W", "closed_form"))
    direct = build_matrix(CertMatrixSpec(k, "W", "expansion"))
    assert sliced == direct


@pytest.mark.parametrize("k", [1, 2])
def test_modular_build_matches_reduction(k):
    for p in (3, 1073741827):
        for which in ("L", "W", "N"):
            exact = build_matrix(CertMatrixSpec(k, which))
            assert build_matrix(CertMatrixSpec(k, which), modulus=p) == exact.reduce_mod(p)


def test_fixtures_match():
    for which, n in (("L", 30), ("W", 27)):
        M, diff = build_matrix_mod3(1, which)
        assert diff == [] and M.shape == (n, n)
        assert fixture(which) == M
    L, _ = build_matrix_mod3(1, "L")
    assert L[0, 3] == 1
    with pytest.raises(ValueError):
        fixture("N")


def test_binomial_entries_are_exact():
    N2 = build_matrix(CertMatrixSpec(1, "N2"))
    row = [v for v in N2.rows()[3] if v]
    assert row == [binom(11, j) for j in range(12)]


def test_spec_validation():
    with pytest.raises(ValueError):
        CertMatrixSpec(0)
    with pytest.raises(ValueError):
        CertMatrixSpec(1, "Q")
    with pytest.raises(ValueError):
        CertMatrixSpec(1, "L", "guess")
