from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alcove.analysis import delta_subset, full_alcove, gamma_subset, modularity_verdict
from alcove.cyclotomic import cyclo_field
from alcove.errors import NonModularLabelSet, OddDegenerate, VanishingGaussSum
from alcove.invariants import (
    GaussSumSpec,
    LinkingMatrix,
    SurdValue,
    gauss_sum,
    hopf_sum,
    invertible_link_state_sum,
    kirby_invariance,
    kirby_slide,
    kirby_stabilize,
    moo_invariant,
    quotient_invariant_relation_check,
    quotient_unknot_sum,
    random_kirby_moves,
    random_linking_matrix,
    rt_invariant_diagonal,
    signature,
    unknot_sum,
)

I_SPEC = GaussSumSpec(2, Fraction(1, 4))  # N = 2, r = i


def test_gauss_sum_examples() -> None:
    assert gauss_sum(GaussSumSpec(1, Fraction(1, 2))) == cyclo_field(2).zeta(1)
    f = cyclo_field(4)
    assert gauss_sum(I_SPEC) == f.one() + f.zeta(1)


@pytest.mark.parametrize("N", [3, 5, 7, 9, 11, 15, 21, 25])
def test_gauss_sum_magnitude_for_odd_n(N: int) -> None:
    for a in range(1, N):
        if math.gcd(a, N) != 1:
            continue
        g = gauss_sum(GaussSumSpec(N, Fraction(a, N)))
        assert g * g.conj() == cyclo_field(1).integer(N)
        assert abs(abs(complex(g)) ** 2 - N) < 1e-9


def test_spec_rejects_wrong_order() -> None:
    with pytest.raises(ValueError):
        GaussSumSpec(2, Fraction(1, 3))
    with pytest.raises(ValueError):
        GaussSumSpec(0, Fraction(0))


def test_vanishing_gauss_sum() -> None:
    spec = GaussSumSpec(2, Fraction(1, 2))  # r = -1, so r + r^4 = 0
    assert gauss_sum(spec).is_zero()
    with pytest.raises(VanishingGaussSum):
        moo_invariant(LinkingMatrix.diagonal([1]), spec)


def test_state_sum_examples() -> None:
    assert invertible_link_state_sum(LinkingMatrix(()), I_SPEC) == cyclo_field(1).one()
    for N in (1, 2, 5):
        spec = GaussSumSpec(N, Fraction(1, 2 * N))
        assert invertible_link_state_sum(LinkingMatrix.diagonal([0]), spec) == cyclo_field(1).integer(N)
    f = cyclo_field(4)
    assert invertible_link_state_sum(LinkingMatrix.diagonal([1]), I_SPEC) == f.one() + f.zeta(1)


def test_moo_examples() -> None:
    assert moo_invariant(LinkingMatrix(()), I_SPEC) == 1
    assert moo_invariant(LinkingMatrix.diagonal([1]), I_SPEC) == 1
    assert moo_invariant(LinkingMatrix.diagonal([-1]), I_SPEC) == 1
    s1s2 = moo_invariant(LinkingMatrix.diagonal([0]), I_SPEC)
    assert abs(complex(s1s2) - math.sqrt(2)) < 1e-12
    assert s1s2 * s1s2 == SurdValue(cyclo_field(1).integer(2), cyclo_field(1).one(), 0)


def test_surd_equality_distinguishes_sign() -> None:
    one = cyclo_field(1).one()
    two = cyclo_field(1).integer(2)
    a = SurdValue(one, two, 1)
    assert a == SurdValue(two, two, 3)
    assert a != SurdValue(-one, two, 1)
    assert SurdValue(cyclo_field(1).zero(), two, 1) == SurdValue(cyclo_field(1).zero(), one, 0)


def test_kirby_move_examples() -> None:
    assert kirby_stabilize(LinkingMatrix(()), 1).A == ((1,),)
    assert kirby_slide(LinkingMatrix.diagonal([0, 1]), 0, 1).A == ((1, 1), (1, 1))
    with pytest.raises(IndexError):
        kirby_slide(LinkingMatrix.diagonal([0, 1]), 0, 0)
    with pytest.raises(IndexError):
        kirby_slide(LinkingMatrix.diagonal([0, 1]), 0, 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_signature_matches_eigenvalues(seed: int) -> None:
    L = random_linking_matrix(random.Random(seed), n_max=6)
    if L.n == 0:
        assert L.signature == 0
        return
    ev = np.linalg.eigvalsh(np.array(L.A, dtype=float))
    assert L.signature == int((ev > 1e-9).sum()) - int((ev < -1e-9).sum())
    assert kirby_stabilize(L, 1).signature == L.signature + 1
    assert kirby_stabilize(L, -1).signature == L.signature - 1


def test_signature_of_zero_diagonal_hyperbolic_block() -> None:
    assert signature([[0, 1], [1, 0]]) == 0
    assert signature([[0, 0], [0, 0]]) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_slides_preserve_signature_and_determinant(seed: int) -> None:
    rng = random.Random(seed)
    L = random_linking_matrix(rng, n_max=5)
    M = random_kirby_moves(rng, L, 8, n_max=6)
    assert abs(round(np.linalg.det(np.array(L.A, dtype=float) if L.n else np.eye(1)))) == abs(
        round(np.linalg.det(np.array(M.A, dtype=float) if M.n else np.eye(1)))
    )


@pytest.mark.parametrize("spec", [I_SPEC, GaussSumSpec(3, Fraction(1, 3)), GaussSumSpec(4, Fraction(1, 8)), GaussSumSpec(5, Fraction(2, 5))])
def test_kirby_invariance(spec: GaussSumSpec) -> None:
    assert kirby_invariance(spec, 25, seed=11, n_max=5) == []


def test_linking_matrix_parse_and_validation() -> None:
    L = LinkingMatrix.parse("2\n1 2\n2 -3\n")
    assert L.A == ((1, 2), (2, -3)) and not L.is_diagonal
    with pytest.raises(ValueError):
        LinkingMatrix.parse("2\n1 2\n3 4\n")
    with pytest.raises(ValueError):
        LinkingMatrix.parse("3\n1 0 0\n")
    with pytest.raises(ValueError):
        LinkingMatrix.parse("")


def test_multiplicative_under_block_sum() -> None:
    rng = random.Random(5)
    spec = GaussSumSpec(3, Fraction(1, 3))
    for _ in range(20):
        A, B = random_linking_matrix(rng, 3), random_linking_matrix(rng, 3)
        assert moo_invariant(A.block_sum(B), spec) == moo_invariant(A, spec) * moo_invariant(B, spec)


def test_rt_examples(alcove_ctx) -> None:
    ctx = alcove_ctx("A1", 1)
    full = full_alcove(ctx)
    md = ctx.modular
    assert rt_invariant_diagonal([], full, md) == 1
    assert abs(complex(rt_invariant_diagonal([0], full, md)) - math.sqrt(2)) < 1e-12
    assert rt_invariant_diagonal([-1], full, md) == 1
    assert rt_invariant_diagonal([1], full, md) == 1


@pytest.mark.parametrize("name,k", [("A1", 3), ("A2", 2), ("B2", 2), ("G2", 2)])
def test_hopf_and_unknot_identities(alcove_ctx, name: str, k: int) -> None:
    ctx = alcove_ctx(name, k)
    md = ctx.modular
    sub = full_alcove(ctx)
    i_p = unknot_sum(sub.members, md, 1)
    i_n = unknot_sum(sub.members, md, -1)
    assert i_p == i_n.conj()
    assert hopf_sum(sub, md) == i_p * i_n


@pytest.mark.parametrize("name,k", [("A1", 3), ("G2", 2)])
def test_rt_lens_space_consistency(alcove_ctx, name: str, k: int) -> None:
    ctx = alcove_ctx(name, k)
    md = ctx.modular
    sub = full_alcove(ctx)
    # two unknots with framings a, b form the block sum of single unknots
    for a, b in itertools.product(range(-2, 3), repeat=2):
        assert rt_invariant_diagonal([a, b], sub, md) == rt_invariant_diagonal([a], sub, md) * rt_invariant_diagonal([b], sub, md)


def test_rt_rejects_odd_degenerates(alcove_ctx) -> None:
    ctx = alcove_ctx("A1", 2)
    with pytest.raises(NonModularLabelSet):
        rt_invariant_diagonal([0], gamma_subset(ctx, ctx.rs.center.subgroup("Z2")), ctx.modular)
    with pytest.raises(OddDegenerate):
        GaussSumSpec.from_delta(delta_subset(ctx, ctx.rs.center.subgroup("Z2")), ctx.modular)


@pytest.mark.parametrize("name,k,N", [("A1", 1, 2), ("A1", 3, 2), ("A1", 4, 1), ("A2", 1, 3), ("A2", 2, 3), ("A2", 3, 1), ("A3", 1, 4)])
def test_moo_agrees_with_delta_state_sum(alcove_ctx, name: str, k: int, N: int) -> None:
    ctx = alcove_ctx(name, k)
    md = ctx.modular
    delta = delta_subset(ctx, ctx.rs.center.cyclic_subgroups()[-1])
    spec = GaussSumSpec.from_delta(delta, md)
    assert spec.N == N
    for n in range(3):
        for fr in itertools.product(range(-2, 3), repeat=n):
            assert moo_invariant(LinkingMatrix.diagonal(fr), spec) == rt_invariant_diagonal(fr, delta, md)


def test_quotient_relation_examples(alcove_ctx) -> None:
    ctx = alcove_ctx("A1", 4)
    md = ctx.modular
    sub = gamma_subset(ctx, ctx.rs.center.subgroup("Z2"))
    q = modularity_verdict(sub, md).quotient
    assert quotient_invariant_relation_check(sub, q, md, [])
    assert quotient_invariant_relation_check(sub, q, md, [0])
    lhs = unknot_sum(sub.members, md, 0)
    assert lhs == quotient_unknot_sum(q, md, 0) * 2
