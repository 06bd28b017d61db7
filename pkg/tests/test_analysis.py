from __future__ import annotations

import pytest

from alcove.analysis import (
    decompose_product,
    degeneracy_report,
    degenerate_labels,
    delta_subset,
    dw_condition,
    dw_levels,
    explicit_subset,
    full_alcove,
    gamma_subset,
    is_closed,
    modularity_verdict,
)
from alcove.errors import InternalConsistencyError
from alcove.rootdata import build_root_system


def _z2(ctx):
    return ctx.rs.center.subgroup("Z2")


def test_trivial_subgroup_gives_full_alcove(alcove_ctx) -> None:
    ctx = alcove_ctx("A2", 3)
    trivial = ctx.rs.center.cyclic_subgroups()[0]
    assert trivial.order == 1
    assert gamma_subset(ctx, trivial).members == tuple(ctx.labels)


@pytest.mark.parametrize("k", range(1, 9))
def test_a1_gamma_and_delta(alcove_ctx, k: int) -> None:
    ctx = alcove_ctx("A1", k)
    g = gamma_subset(ctx, _z2(ctx))
    assert g.members == tuple((m,) for m in range(0, k + 1, 2))
    assert all(ctx.rs.in_root_lattice(m) for m in g.members)
    assert delta_subset(ctx, _z2(ctx)).members == ((0,), (k,))
    assert g.name == "Gamma_Z2:1"


def test_explicit_subset_must_be_closed(alcove_ctx) -> None:
    ctx = alcove_ctx("A1", 3)
    assert is_closed(explicit_subset(ctx, [(0,), (3,)]))
    with pytest.raises(InternalConsistencyError):
        explicit_subset(ctx, [(0,), (1,)])


@pytest.mark.parametrize("name,k", [("A1", 4), ("A2", 3), ("B2", 4), ("G2", 3)])
def test_full_alcove_has_only_the_unit_degenerate(alcove_ctx, name: str, k: int) -> None:
    ctx = alcove_ctx(name, k)
    assert degenerate_labels(full_alcove(ctx), ctx.modular) == [ctx.iota]


@pytest.mark.parametrize("k", range(1, 13))
def test_a1_parity_pattern(alcove_ctx, k: int) -> None:
    ctx = alcove_ctx("A1", k)
    v = modularity_verdict(gamma_subset(ctx, _z2(ctx)), ctx.modular)
    if k % 2:
        assert v.kind == "Modular"
        return
    assert v.report.labels == ((0,), (k,))
    parity = v.report.degenerates[1].parity
    if k % 4 == 2:
        assert v.kind == "Obstructed" and parity == "odd"
        assert v.odd_degenerates == ((k,),)
    else:
        assert v.kind == "Quotientable" and parity == "even"
        assert v.quotient is not None and v.quotient.group_order == 2
    assert v.report.degenerates[1].arithmetic_parity == parity


def test_verdict_string_and_det_flag(alcove_ctx) -> None:
    ctx = alcove_ctx("A1", 3)
    v = modularity_verdict(gamma_subset(ctx, _z2(ctx)), ctx.modular)
    assert str(v) == "Modular" and v.det_checked


def test_degeneracy_report_group_and_subgroup(alcove_ctx) -> None:
    ctx = alcove_ctx("A3", 4)
    z = ctx.rs.center.subgroup("Z4")
    report = degeneracy_report(gamma_subset(ctx, z), ctx.modular)
    assert set(report.labels) == {ctx.k_ell(g) for g in z.elements}
    assert report.subgroup == z
    assert report.outside_center_image == ()
    for (a, b), c in report.group_table.items():
        assert c in report.labels


def test_dw_levels_examples() -> None:
    rs = build_root_system("A1")
    assert dw_levels(rs, rs.center.subgroup("Z2"), 12) == [4, 8, 12]
    assert dw_levels(rs, rs.center.cyclic_subgroups()[0], 5) == [1, 2, 3, 4, 5]


@pytest.mark.parametrize(
    "name,sel,period",
    [("A2", "Z3", 3), ("A3", "Z4", 8), ("A3", "Z2", 2), ("B3", "Z2", 2), ("C3", "Z2", 4), ("E6", "Z3", 3), ("E7", "Z2", 4)],
)
def test_dw_levels_are_multiples_of_a_period(name: str, sel: str, period: int) -> None:
    rs = build_root_system(name)
    z = rs.center.subgroup(sel)
    assert dw_levels(rs, z, 24) == list(range(period, 25, period))
    assert dw_condition(rs, z, period)


def test_quotient_data_a1_level4(alcove_ctx) -> None:
    ctx = alcove_ctx("A1", 4)
    q = modularity_verdict(gamma_subset(ctx, _z2(ctx)), ctx.modular).quotient
    assert q.orbits == (((0,), (4,)), ((2,),))
    assert q.stabilizers == (1, 2)
    assert q.quotient_count == 3 == q.torus_dimension
    assert not q.acts_freely


@pytest.mark.parametrize("k", [1, 3, 5])
def test_a1_odd_level_product(alcove_ctx, k: int) -> None:
    ctx = alcove_ctx("A1", k)
    d = decompose_product(full_alcove(ctx), ctx.modular)
    assert d is not None
    assert d.names == ("Gamma_Z2:1", "Delta_Z2:1")
    assert d.intersection == ((0,),)
    assert d.s_factorization_checked
    assert set(d.factorization) == set(ctx.labels)


@pytest.mark.parametrize("k", [2, 4, 6])
def test_a1_even_level_has_no_product(alcove_ctx, k: int) -> None:
    ctx = alcove_ctx("A1", k)
    assert decompose_product(full_alcove(ctx), ctx.modular) is None


def test_delta_subsets_are_not_split(alcove_ctx) -> None:
    ctx = alcove_ctx("A1", 3)
    assert decompose_product(delta_subset(ctx, _z2(ctx)), ctx.modular) is None


def test_a2_level_not_divisible_by_3_is_a_product(alcove_ctx) -> None:
    ctx = alcove_ctx("A2", 2)
    d = decompose_product(full_alcove(ctx), ctx.modular)
    assert d is not None and d.names == ("Gamma_Z3:1", "Delta_Z3:1")
