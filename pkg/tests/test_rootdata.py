from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alcove.errors import FullCenterOfD2n, InadmissibleType
from alcove.rootdata import LieType, build_root_system, center_character, center_group

# (type, #positive roots, dual Coxeter number, |Z(G)|)
CLASSICAL_DATA = [
    ("A1", 1, 2, 2),
    ("A2", 3, 3, 3),
    ("A4", 10, 5, 5),
    ("B2", 4, 3, 2),
    ("B3", 9, 5, 2),
    ("C3", 9, 4, 2),
    ("D4", 12, 6, 4),
    ("D5", 20, 8, 4),
    ("E6", 36, 12, 3),
    ("E7", 63, 18, 2),
    ("E8", 120, 30, 1),
    ("F4", 24, 9, 1),
    ("G2", 6, 4, 1),
]


@pytest.mark.parametrize("name,npos,h,zorder", CLASSICAL_DATA)
def test_root_counts_and_coxeter_numbers(name: str, npos: int, h: int, zorder: int) -> None:
    rs = build_root_system(name)
    assert len(rs.positive_roots) == npos
    assert rs.h == h
    assert rs.h == rs.inner(rs.rho, rs.theta) + 1
    assert rs.center.order == zorder


@pytest.mark.parametrize("name,npos", [(n, p) for n, p, _, _ in CLASSICAL_DATA])
def test_adjoint_dimension(name: str, npos: int) -> None:
    rs = build_root_system(name)
    assert rs.weyl_dimension(rs.theta) == rs.rank + 2 * npos


@pytest.mark.parametrize("name", [row[0] for row in CLASSICAL_DATA])
def test_long_roots_have_length_two(name: str) -> None:
    rs = build_root_system(name)
    assert rs.inner(rs.theta, rs.theta) == 2
    lengths = {rs.inner(a, a) for a in rs.positive_roots}
    assert max(lengths) == 2
    assert len(lengths) == (1 if rs.simply_laced else 2)


@pytest.mark.parametrize("name", ["A3", "B3", "C4", "G2", "F4"])
def test_fundamental_weights_are_dual_to_coroots(name: str) -> None:
    rs = build_root_system(name)
    for i in range(rs.rank):
        for j, alpha in enumerate(rs.simple_roots):
            coroot_pairing = 2 * rs.inner(rs.fundamental(i), alpha) / rs.inner(alpha, alpha)
            assert coroot_pairing == int(i == j)


def test_a1_basics() -> None:
    rs = build_root_system("A1")
    assert rs.inner((1,), (1,)) == Fraction(1, 2)
    assert rs.inner(rs.rho, rs.theta) == 1
    assert rs.h == 2


@pytest.mark.parametrize(
    "name,nodes",
    [("A3", [0, 1, 2]), ("B3", [0]), ("C3", [2]), ("D4", [0, 2, 3]), ("E6", [0, 5]), ("E7", [6]), ("E8", [])],
)
def test_center_image(name: str, nodes: list[int]) -> None:
    rs = build_root_system(name)
    got = sorted(z.node for z in rs.center.elements if z.node is not None)
    assert got == nodes


def test_center_character_examples() -> None:
    rs = build_root_system("A1")
    z = rs.center.generators[0]
    assert center_character(rs, z, (1,)) == Fraction(1, 2)
    assert center_character(rs, z, (2,)) == 0
    assert center_character(rs, rs.center.identity, (1,)) == 0


@pytest.mark.parametrize("name", ["A3", "B2", "C3", "D5", "E6", "E7"])
def test_center_characters_vanish_on_roots(name: str) -> None:
    rs = build_root_system(name)
    for z in rs.center.elements:
        for a in rs.positive_roots:
            assert center_character(rs, z, a) == 0


def test_center_group_multiplication_a3() -> None:
    c = build_root_system("A3").center
    gen = c.generators[0]
    assert c.element_order(gen) == 4
    assert c.power(gen, 4) == c.identity
    assert [s.order for s in c.cyclic_subgroups()] == [1, 2, 4]


def test_d4_center_selectors() -> None:
    c = build_root_system("D4").center
    assert not c.is_cyclic
    assert len([s for s in c.cyclic_subgroups() if s.order == 2]) == 3
    assert c.subgroup("Z2:1").label == "Z2:1"
    with pytest.raises(FullCenterOfD2n):
        c.subgroup("Z4")
    with pytest.raises(ValueError, match="ambiguous"):
        c.subgroup("Z2")


def test_d5_center_is_cyclic() -> None:
    c = build_root_system("D5").center
    assert c.is_cyclic and c.order == 4


@pytest.mark.parametrize("bad", ["A0", "B1", "C1", "D2", "E5", "F3", "G1", "H2", "xyz"])
def test_inadmissible_types(bad: str) -> None:
    with pytest.raises(InadmissibleType):
        LieType.parse(bad)


def test_subgroup_selector_must_divide_order() -> None:
    with pytest.raises(ValueError):
        build_root_system("A2").center.subgroup("Z2")


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2", "C3"]), st.data())
def test_dominant_conjugate_and_orbit(name: str, data: st.DataObject) -> None:
    rs = build_root_system(name)
    w = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=rs.rank, max_size=rs.rank)))
    d = rs.dominant_conjugate(w)
    assert all(x >= 0 for x in d)
    assert w in rs.weyl_orbit(d)
    assert rs.inner(w, w) == rs.inner(d, d)


@pytest.mark.parametrize("name", ["A3", "B2", "G2", "E6"])
def test_dual_is_involution_preserving_dimension(name: str) -> None:
    rs = build_root_system(name)
    for i in range(rs.rank):
        lam = rs.fundamental(i)
        assert rs.dual(rs.dual(lam)) == lam
        assert rs.weyl_dimension(rs.dual(lam)) == rs.weyl_dimension(lam)


def test_center_group_function_matches_property() -> None:
    rs = build_root_system("A2")
    assert center_group(rs).elements == rs.center.elements


@pytest.mark.parametrize("name,same", [("C2", "B2"), ("D3", "A3")])
def test_low_rank_coincidences_are_admitted(name: str, same: str) -> None:
    a, b = build_root_system(name), build_root_system(same)
    assert len(a.positive_roots) == len(b.positive_roots)
    assert a.h == b.h
