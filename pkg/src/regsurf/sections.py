"""Section maps for the surfaces X_m, the toric surfaces Y_m, and bundled examples."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .polyring import Poly, Ring, SectionMap, parse_section_map

Y_RING = Ring(("y0", "y1", "y2"))


def _mono(ring: Ring, *e) -> Poly:
    return Poly.monomial(ring, e)


def sections(m: int, variant: str = "X", modulus: int = 0) -> SectionMap:
    """The degree-m linear system defining X_m (5 sections) or Y_m (6 monomials)."""
    if m < 6:
        raise ValueError(f"m must be at least 6, got {m}")
    ring = Ring(Y_RING.names, modulus)
    s0 = _mono(ring, 0, m - 1, 1)
    s1 = _mono(ring, m - 1, 1, 0)
    a = _mono(ring, 0, m, 0)
    b = _mono(ring, 0, m - 3, 3)
    s3 = _mono(ring, m, 0, 0)
    s4 = _mono(ring, 1, 0, m - 1)
    if variant == "X":
        return SectionMap(ring, (s0, s1, a + b, s3, s4))
    if variant == "Y":
        return SectionMap(ring, (s0, s1, a, b, s3, s4))
    raise ValueError(f"unknown variant {variant!r}")


def exponent_points(m: int) -> list:
    """Affine exponent data (a_1, a_2) of the Y_m monomials, y_0 dropped."""
    return [tuple(e[1:]) for s in sections(m, "Y").sections for e in s.terms]


def data_text(name: str) -> str:
    return resources.files("regsurf.data").joinpath(name).read_text()


@lru_cache(maxsize=None)
def bundled_map(name: str) -> SectionMap:
    """Load one of the bundled section-map files by stem name."""
    return parse_section_map(data_text(f"{name}.map"))


def twisted_cubic() -> SectionMap:
    ring = Ring(("u", "v"))
    return SectionMap(ring, tuple(_mono(ring, 3 - i, i) for i in range(4)))
