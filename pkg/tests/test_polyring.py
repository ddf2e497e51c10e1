from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from regsurf.polyring import (
    Poly,
    Ring,
    RingMismatch,
    SectionMap,
    block_order,
    degrevlex,
    lex,
    mon,
    monomials_of_degree,
    parse_poly,
    parse_section_map,
    substitute,
)
from regsurf.sections import bundled_map, exponent_points, sections

R3 = Ring(("x", "y", "z"))
exps = st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
orders = st.sampled_from([lex(3), degrevlex(3), degrevlex(3, (1, 2, 3)), block_order(3, 1), block_order(3, 2)])


@given(orders, exps, exps, exps)
def test_orders_are_multiplicative(order, a, b, c):
    ka, kb = order.key(a), order.key(b)
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    if ka < kb:
        assert order.key(ac) < order.key(bc)
    assert order.key((0, 0, 0)) <= order.key(a)


@given(orders, exps, exps)
def test_orders_are_total(order, a, b):
    assert (order.key(a) == order.key(b)) == (a == b)


def test_degrevlex_example():
    o = degrevlex(3)
    # x*z^2 > y^3 in degrevlex with x > y > z (smallest last variable wins)
    assert o.key((1, 0, 2)) < o.key((0, 3, 0))
    assert lex(3).key((1, 0, 0)) > lex(3).key((0, 5, 5))


polys = st.dictionaries(exps, st.integers(-5, 5), max_size=5).map(lambda d: Poly(R3, d))


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f - f == Poly(R3, {})


@given(polys)
def test_parse_roundtrip(f):
    if f.is_zero():
        return
    assert parse_poly(f.to_string(), R3) == f


def test_power_binomial_path():
    x, y, _ = R3.gens()
    assert (x + y) ** 5 == (x + y) * (x + y) * (x + y) * (x + y) * (x + y)
    assert (2 * x - 3 * y) ** 4 == (2 * x - 3 * y) ** 2 * (2 * x - 3 * y) ** 2


def test_mon_of_zero_raises():
    with pytest.raises(ValueError):
        mon(Poly(R3, {}))
    assert mon(parse_poly("x*y + 2*z^2", R3)) == {(1, 1, 0), (0, 0, 2)}


def test_fraction_coefficients_normalize():
    f = Poly(R3, {(1, 0, 0): Fraction(4, 2)})
    assert f.terms[(1, 0, 0)] == 2 and isinstance(f.terms[(1, 0, 0)], int)


def test_modular_ring():
    R = Ring(("x",), 7)
    x = R.gen(0)
    assert (x + 6) * (x + 1) == x**2 - 1
    with pytest.raises(ValueError):
        Ring(("x",), 8)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        R3.gen(0) + Ring(("a",)).gen(0)


def test_sections_x6_and_y6():
    X = sections(6)
    assert [s.to_string() for s in X.sections] == ["y1^5*y2", "y0^5*y1", "y1^6 + y1^3*y2^3", "y0^6", "y0*y2^5"]
    Y = sections(6, "Y")
    assert len(Y.sections) == 6 and all(len(s) == 1 for s in Y.sections)
    assert all(s.degree() == 6 and s.is_homogeneous() for s in X.sections + Y.sections)
    with pytest.raises(ValueError):
        sections(5)
    assert sorted(exponent_points(6)) == sorted([(5, 1), (1, 0), (6, 0), (3, 3), (0, 0), (0, 5)])


@pytest.mark.parametrize("m", [6, 7, 11, 20])
def test_sections_are_degree_m(m):
    for v in ("X", "Y"):
        assert all(s.is_homogeneous() and s.degree() == m for s in sections(m, v).sections)


def test_section_map_rejects_mixed_degrees():
    R = Ring(("u", "v"))
    u, v = R.gens()
    with pytest.raises(ValueError):
        SectionMap(R, (u**2, v**3))
    with pytest.raises(ValueError):
        SectionMap(R, (u**2 + v,))


def test_parse_section_map_roundtrip():
    smap = bundled_map("reg11_surface")
    again = parse_section_map(smap.to_text())
    assert again.sections == smap.sections and again.target_names == smap.target_names
    with pytest.raises(ValueError):
        parse_section_map("map x0 = y0;")


def test_substitute_twisted_cubic_relation():
    R = Ring(("u", "v"))
    u, v = R.gens()
    smap = SectionMap(R, (u**3, u**2 * v, u * v**2, v**3))
    x = Ring.of("x", 4).gens()
    assert substitute(x[0] * x[2] - x[1] ** 2, smap).is_zero()
    assert not substitute(x[0] * x[3] - x[1] ** 2, smap).is_zero()


def test_monomials_of_degree_count():
    assert len(list(monomials_of_degree(5, 34))) == 73815
    assert all(sum(e) == 4 for e in monomials_of_degree(3, 4))
