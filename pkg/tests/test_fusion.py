from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alcove import affine_dominant, enumerate_alcove, fuse
from alcove.errors import NonInvertible
from alcove.fusion import (
    affine_dominant_batch,
    fusion_coefficient_literal,
    invertible_group,
    invertibles,
    outside_k_ell,
    phi,
    quantum_dimension_float,
    recover_tau,
)


@pytest.mark.parametrize("k", range(1, 7))
def test_a1_alcove(alcove_ctx, k: int) -> None:
    ctx = alcove_ctx("A1", k)
    assert ctx.labels == [(m,) for m in range(k + 1)]


@pytest.mark.parametrize("name,k", [("A2", 3), ("B2", 4), ("G2", 3), ("C3", 2), ("F4", 2)])
def test_alcove_is_the_level_bounded_dominant_set(alcove_ctx, name: str, k: int) -> None:
    ctx = alcove_ctx(name, k)
    rs = ctx.rs
    box = itertools.product(range(k + 1), repeat=rs.rank)
    expected = {w for w in box if rs.inner(w, rs.theta) <= k}
    assert set(ctx.labels) == expected
    assert len(ctx.labels) == len(expected)


@pytest.mark.parametrize("name,k", [("A3", 2), ("B3", 2), ("C3", 3), ("G2", 3), ("F4", 4), ("E6", 1)])
def test_corner_count(alcove_ctx, name: str, k: int) -> None:
    ctx = alcove_ctx(name, k)
    expected = 1 + sum(k % c == 0 for c in ctx.rs.comarks)
    assert len(ctx.corners) == expected


def test_affine_dominant_examples(alcove_ctx) -> None:
    ctx = alcove_ctx("A1", 2)
    assert affine_dominant(ctx, (1,)).representative == (1,) and affine_dominant(ctx, (1,)).sign == 1
    assert affine_dominant(ctx, (3,)).is_wall
    assert affine_dominant(ctx, (-1,)).is_wall
    # x = mu + rho = 5 reflects across (x, theta) = k + h = 4 to 3
    flipped = affine_dominant(ctx, (4,))
    assert flipped.representative == (2,) and flipped.sign == -1
    flipped = affine_dominant(ctx, (-2,))
    assert flipped.representative == (0,) and flipped.sign == -1


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([("A2", 3), ("B2", 2), ("G2", 2), ("C3", 2)]), st.data())
def test_batch_matches_scalar(case, data: st.DataObject) -> None:
    ctx = enumerate_alcove(*case)
    pts = data.draw(
        st.lists(st.lists(st.integers(-12, 12), min_size=ctx.rs.rank, max_size=ctx.rs.rank), min_size=1, max_size=20)
    )
    reps, signs = affine_dominant_batch(ctx, np.array(pts))
    for p, rep, s in zip(pts, reps, signs):
        one = affine_dominant(ctx, p)
        assert one.sign == s
        if s:
            assert one.representative == tuple(int(x) for x in rep)
            assert one.representative in ctx


def test_identity_is_unit(alcove_ctx) -> None:
    ctx = alcove_ctx("B2", 3)
    for lam in ctx.labels:
        assert fuse(ctx, lam, ctx.iota) == {lam: 1}


def test_a1_level1_and_level2(alcove_ctx) -> None:
    assert fuse(alcove_ctx("A1", 1), (1,), (1,)) == {(0,): 1}
    ctx = alcove_ctx("A1", 2)
    assert fuse(ctx, (1,), (1,)) == {(0,): 1, (2,): 1}
    assert fuse(ctx, (2,), (2,)) == {(0,): 1}


@pytest.mark.parametrize("k", range(1, 7))
def test_a1_truncated_clebsch_gordan(alcove_ctx, k: int) -> None:
    ctx = alcove_ctx("A1", k)
    for a, b in itertools.product(range(k + 1), repeat=2):
        top = min(a + b, 2 * k - a - b)
        expected = {(c,): 1 for c in range(abs(a - b), top + 1, 2)}
        assert fuse(ctx, (a,), (b,)) == expected


@pytest.mark.parametrize("name,k", [("A2", 2), ("B2", 2), ("G2", 2), ("A1", 4)])
def test_reindexed_sum_matches_literal_group_sum(alcove_ctx, name: str, k: int) -> None:
    ctx = alcove_ctx(name, k)
    for lam, gamma in itertools.product(ctx.labels, repeat=2):
        row = fuse(ctx, lam, gamma)
        for eta in ctx.labels:
            assert fusion_coefficient_literal(ctx, lam, gamma, eta) == row.get(eta, 0)


@pytest.mark.parametrize("name,k", [("A2", 2), ("B2", 2), ("G2", 3)])
def test_verlinde_formula(alcove_ctx, name: str, k: int) -> None:
    ctx = alcove_ctx(name, k)
    S = ctx.modular.smatrix_numeric()
    S = S / np.sqrt((np.abs(S[0]) ** 2).sum())
    n = len(ctx)
    for i, j in itertools.product(range(n), repeat=2):
        row = fuse(ctx, ctx.labels[i], ctx.labels[j])
        for m in range(n):
            v = (S[i] * S[j] * S[m].conj() / S[0]).sum()
            assert abs(v - row.get(ctx.labels[m], 0)) < 1e-9


def test_commutativity_and_diagram_operand_choice(alcove_ctx) -> None:
    ctx = alcove_ctx("C3", 2)
    for lam, gamma in itertools.combinations(ctx.labels, 2):
        assert fuse(ctx, lam, gamma) == fuse(ctx, gamma, lam) == ctx.table.row(lam, gamma)


def test_label_outside_alcove_rejected(alcove_ctx) -> None:
    with pytest.raises(ValueError):
        fuse(alcove_ctx("A1", 2), (3,), (0,))


@pytest.mark.parametrize("name,k", [("A1", 3), ("A3", 2), ("B3", 2), ("C3", 3), ("D4", 1), ("D5", 2), ("E6", 2), ("E7", 1)])
def test_invertibles_are_the_center_image(alcove_ctx, name: str, k: int) -> None:
    ctx = alcove_ctx(name, k)
    image = sorted({ctx.k_ell(z) for z in ctx.rs.center.elements})
    assert sorted(ctx.invertibles) == image
    assert outside_k_ell(ctx) == []


def test_e8_level2_anomaly(alcove_ctx) -> None:
    ctx = alcove_ctx("E8", 2)
    extra = outside_k_ell(ctx)
    assert len(extra) == 1 and ctx.rs.level_of(extra[0]) == 2
    assert sorted(ctx.invertibles) == sorted([ctx.iota] + extra)


@pytest.mark.parametrize("k", range(1, 7))
def test_a1_phi(alcove_ctx, k: int) -> None:
    ctx = alcove_ctx("A1", k)
    for m in range(k + 1):
        assert phi(ctx.table, (k,), (m,)) == (k - m,)
        assert phi(ctx.table, (0,), (m,)) == (m,)


@pytest.mark.parametrize("name,k", [("A2", 3), ("A3", 2), ("C3", 2), ("B2", 2), ("D4", 2)])
def test_phi_is_an_isometry_and_a_homomorphism(alcove_ctx, name: str, k: int) -> None:
    ctx = alcove_ctx(name, k)
    table = ctx.table
    rs = ctx.rs
    group = invertible_group(table)
    for u in ctx.invertibles:
        images = [phi(table, u, g) for g in ctx.labels]
        assert sorted(images) == sorted(ctx.labels)
        tau = recover_tau(table, u)
        if tau is not None:
            T = np.array(tau)
            for g in ctx.labels:
                assert phi(table, u, g) == tuple(int(x) for x in np.array(u) + T @ np.array(g))
            # tau preserves the inner product on weights
            G = np.array([[float(x) for x in row] for row in rs.gram])
            assert np.allclose(T.T @ G @ T, G)
        for v in ctx.invertibles:
            uv = group[(u, v)]
            for g in ctx.labels:
                assert phi(table, u, phi(table, v, g)) == phi(table, uv, g)


def test_phi_commutes_with_fusion(alcove_ctx) -> None:
    ctx = alcove_ctx("A2", 3)
    table = ctx.table
    for u in ctx.invertibles:
        for a, b in itertools.product(ctx.labels, repeat=2):
            left = {phi(table, u, eta): n for eta, n in table.row(a, b).items()}
            assert left == table.row(phi(table, u, a), b)


def test_phi_rejects_non_invertible(alcove_ctx) -> None:
    ctx = alcove_ctx("A1", 3)
    with pytest.raises(NonInvertible):
        phi(ctx.table, (1,), (0,))


def test_qdim_float_screen_agrees_with_fusion(alcove_ctx) -> None:
    ctx = alcove_ctx("B2", 4)
    for lam in ctx.labels:
        d = quantum_dimension_float(ctx, lam)
        assert d >= 1 - 1e-12
        assert (abs(d - 1) < 1e-9) == (lam in invertibles(ctx.table))


def test_table_seal_and_triples(alcove_ctx) -> None:
    ctx = enumerate_alcove("A1", 2)
    table = ctx.table.seal()
    triples = list(table.triples())
    assert ((1,), (1,), (2,), 1) in triples
    assert table.N((1,), (1,), (1,)) == 0
