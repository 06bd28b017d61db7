"""Closed 3-manifold invariants from modular data and linking matrices.

Values have the shape  numerator / R^(p/2)  with the numerator in a
cyclotomic field and R a positive real cyclotomic number (|G|^2 or
|I(N)|^2).  Equality is decided on squares, which only involve integral
powers of R, and a numeric comparison is used only to tell a value from its
negative.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .analysis import ClosedSubset, QuotientData, degeneracy_report
from .cyclotomic import CycloValue, cyclo_field
from .errors import InternalConsistencyError, NonModularLabelSet, OddDegenerate, VanishingGaussSum
from .modular import ModularData
from .rootdata import Subgroup


# --- linking matrices -----------------------------------------------------------


@dataclass(frozen=True)
class LinkingMatrix:
    A: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.A)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("linking matrix must be square")
        if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
            raise ValueError("linking matrix must be symmetric")
        object.__setattr__(self, "A", rows)

    @classmethod
    def diagonal(cls, framings: Sequence[int]) -> LinkingMatrix:
        n = len(framings)
        return cls(tuple(tuple(framings[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def parse(cls, text: str) -> LinkingMatrix:
        """Line 1 is n, then n lines of n integers."""
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty linking matrix file")
        n = int(lines[0][0])
        body = lines[1:]
        if len(body) != n:
            raise ValueError(f"expected {n} matrix rows, found {len(body)}")
        return cls(tuple(tuple(int(x) for x in row) for row in body))

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def is_diagonal(self) -> bool:
        return all(self.A[i][j] == 0 for i in range(self.n) for j in range(self.n) if i != j)

    @property
    def framings(self) -> tuple[int, ...]:
        return tuple(self.A[i][i] for i in range(self.n))

    @cached_property
    def signature(self) -> int:
        return signature(self.A)

    def block_sum(self, other: LinkingMatrix) -> LinkingMatrix:
        n, m = self.n, other.n
        rows = [list(r) + [0] * m for r in self.A] + [[0] * n + list(r) for r in other.A]
        return LinkingMatrix(tuple(tuple(r) for r in rows))


def signature(A: Sequence[Sequence[int]]) -> int:
    """Signature of a symmetric integer matrix by exact congruence diagonalization."""
    m = [[Fraction(x) for x in row] for row in A]
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace row/column i by i + j, making the diagonal entry 2 m_ij nonzero
            for t in range(n):
                m[i][t] += m[j][t]
            for t in range(n):
                m[t][i] += m[t][j]
            piv = i
        d = m[piv][piv]
        active.remove(piv)
        for i in active:
            f = m[i][piv] / d
            if f:
                for t in range(n):
                    m[i][t] -= f * m[piv][t]
                for t in range(n):
                    m[t][i] -= f * m[t][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
    return pos - neg


def kirby_stabilize(L: LinkingMatrix, sign: int) -> LinkingMatrix:
    if sign not in (1, -1):
        raise ValueError("stabilization sign must be +1 or -1")
    return L.block_sum(LinkingMatrix(((sign,),)))


def kirby_slide(L: LinkingMatrix, i: int, j: int, sign: int = 1) -> LinkingMatrix:
    """Slide component i over component j: A -> E A E^T with E = I + sign e_ij."""
    n = L.n
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise IndexError(f"invalid slide ({i}, {j}) for {n} components")
    A = [list(r) for r in L.A]
    for t in range(n):
        A[i][t] += sign * A[j][t]
    for t in range(n):
        A[t][i] += sign * A[t][j]
    return LinkingMatrix(tuple(tuple(r) for r in A))


def random_linking_matrix(rng: random.Random, n_max: int = 6, bound: int = 5) -> LinkingMatrix:
    n = rng.randint(0, n_max)
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            A[i][j] = A[j][i] = rng.randint(-bound, bound)
    return LinkingMatrix(tuple(tuple(r) for r in A))


def random_kirby_moves(rng: random.Random, L: LinkingMatrix, length: int, n_max: int = 6) -> LinkingMatrix:
    """Apply up to ``length`` stabilizations, destabilizations and slides."""
    for _ in range(rng.randint(1, length)):
        moves = ["slide"] if L.n >= 2 else []
        if L.n < n_max:
            moves.append("stabilize")
        if _destabilizable(L) is not None:
            moves.append("destabilize")
        if not moves:
            break
        move = rng.choice(moves)
        if move == "stabilize":
            L = kirby_stabilize(L, rng.choice((1, -1)))
        elif move == "destabilize":
            L = _destabilize(L, _destabilizable(L))
        else:
            i, j = rng.sample(range(L.n), 2)
            L = kirby_slide(L, i, j, rng.choice((1, -1)))
    return L


def _destabilizable(L: LinkingMatrix) -> int | None:
    for i in range(L.n):
        if abs(L.A[i][i]) == 1 and all(L.A[i][j] == 0 for j in range(L.n) if j != i):
            return i
    return None


def _destabilize(L: LinkingMatrix, i: int) -> LinkingMatrix:
    keep = [t for t in range(L.n) if t != i]
    return LinkingMatrix(tuple(tuple(L.A[a][b] for b in keep) for a in keep))


# --- exact values ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SurdValue:
    """numerator / radicand^(power/2) with radicand a positive real cyclotomic number."""

    numerator: CycloValue
    radicand: CycloValue
    power: int

    def __complex__(self) -> complex:
        return complex(self.numerator) / complex(self.radicand).real ** (self.power / 2)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def square(self) -> tuple[CycloValue, CycloValue]:
        """(numerator^2, radicand^power): self^2 is their quotient."""
        return self.numerator * self.numerator, self.radicand**self.power

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SurdValue):
            if isinstance(other, (int, CycloValue)):
                one = cyclo_field(1).one()
                other = SurdValue(one * other, one, 0)
            else:
                return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        a2, ra = self.square()
        b2, rb = other.square()
        if a2 * rb != b2 * ra:
            return False
        # self = +-other; the two candidates are far apart numerically
        x, y = complex(self), complex(other)
        return abs(x - y) < abs(x + y)

    def __hash__(self) -> int:
        return hash(round(complex(self).real, 9))

    def __mul__(self, other: SurdValue) -> SurdValue:
        if self.radicand != other.radicand:
            raise ValueError("products need a common radicand")
        return SurdValue(self.numerator * other.numerator, self.radicand, self.power + other.power)

    def __repr__(self) -> str:
        return f"SurdValue({complex(self):.12g})"


# --- Gauss sums and MOO ---------------------------------------------------------


@dataclass(frozen=True)
class GaussSumSpec:
    """r = exp(2 pi i * r_exponent), with the sum over Z_N."""

    N: int
    r_exponent: Fraction

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError("N must be positive")
        x = Fraction(self.r_exponent) % 1
        object.__setattr__(self, "r_exponent", x)
        if (2 * self.N * x).denominator != 1:
            raise ValueError(f"r^(2N) != 1 for N={self.N}, r=exp(2 pi i {x})")

    @property
    def order(self) -> int:
        """Cyclotomic order used for values."""
        return 2 * self.N

    @property
    def r_power(self) -> int:
        """a with r = zeta_order^a."""
        return int(self.r_exponent * self.order)

    def r(self) -> CycloValue:
        return cyclo_field(self.order).zeta(self.r_power)

    @classmethod
    def from_delta(cls, delta: ClosedSubset, md: ModularData) -> GaussSumSpec:
        """N is the order of Delta_Z modulo its even degenerates; r = exp(pi i k (l, l)).

        l ranges over l[Z] and the one giving k (l, l) the largest
        denominator is used.
        """
        ctx = delta.ctx
        rs = ctx.rs
        z: Subgroup = delta.subgroup
        report = degeneracy_report(delta, md)
        if report.odd:
            raise OddDegenerate(f"{delta.name} has odd degenerates {report.odd}")
        N = len(delta) // len(report.degenerates)
        vals = {g: ctx.level * rs.inner(rs.center.ell(g), rs.center.ell(g)) for g in z.elements}
        best = vals[max(z.elements, key=lambda g: (vals[g].denominator, g == z.generator))]
        if best.denominator != N:
            raise InternalConsistencyError(f"denominator {best.denominator} disagrees with quotient order {N}")
        return cls(N, best / 2)


def gauss_sum(spec: GaussSumSpec) -> CycloValue:
    """G_N(r) = sum_{m=1}^N r^(m^2)."""
    f = cyclo_field(spec.order)
    vec = np.zeros(spec.order, dtype=np.int64)
    for m in range(1, spec.N + 1):
        vec[(spec.r_power * m * m) % spec.order] += 1
    return f.from_dense(vec)


def invertible_link_state_sum(L: LinkingMatrix, spec: GaussSumSpec) -> CycloValue:
    """sum over l in (Z_N)^n of r^(l^T A l)."""
    f = cyclo_field(spec.order)
    n = L.n
    if n == 0:
        return f.one()
    A = np.array(L.A, dtype=np.int64)
    counts = np.zeros(spec.order, dtype=np.int64)
    ls = np.indices((spec.N,) * n, dtype=np.int64).reshape(n, -1).T
    q = np.einsum("ij,jk,ik->i", ls, A, ls)
    np.add.at(counts, (q * spec.r_power) % spec.order, 1)
    return f.from_dense(counts)


def _normalize(total: CycloValue, g: CycloValue, n: int, sigma: int, sign: int) -> SurdValue:
    """(g/|g|)^(sign*sigma) |g|^-n total."""
    e = sign * sigma
    phase = g ** e if e >= 0 else g.conj() ** (-e)
    return SurdValue(phase * total, g * g.conj(), n + abs(sigma))


def moo_invariant(L: LinkingMatrix, spec: GaussSumSpec) -> SurdValue:
    """(G/|G|)^(-sigma(A)) |G|^(-n) sum_{l in (Z_N)^n} r^(l^T A l)."""
    g = gauss_sum(spec)
    if g.is_zero():
        raise VanishingGaussSum(f"G_{spec.N}(r) = 0 for r = exp(2 pi i {spec.r_exponent})")
    return _normalize(invertible_link_state_sum(L, spec), g, L.n, L.signature, -1)


def kirby_invariance(spec: GaussSumSpec, count: int, seed: int, n_max: int = 6, length: int = 8) -> list[str]:
    """Random matrices and move sequences whose invariant changed (empty when all agree)."""
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        L = random_linking_matrix(rng, n_max=n_max)
        M = random_kirby_moves(rng, L, length, n_max=n_max)
        if moo_invariant(L, spec) != moo_invariant(M, spec):
            bad.append(f"#{i}: {L.A} -> {M.A}")
    return bad


# --- omega state sums over label sets ---------------------------------------------


def unknot_sum(labels: Iterable, md: ModularData, framing: int) -> CycloValue:
    """sum_gamma qdim(gamma)^2 C_gamma^framing, the framed omega-unknot."""
    f = md.field
    acc = np.zeros(md.order, dtype=object)
    for g in labels:
        d = md.qdim(g)
        d2 = (d * d).dense()
        acc = acc + np.roll(d2, framing * md.twist_exponent(g))
    return f.from_dense(acc)


def omega_state_sum(framings: Sequence[int], labels: Sequence, md: ModularData) -> CycloValue:
    """I(L) for a disjoint union of framed unknots colored by omega."""
    out = md.field.one()
    cache: dict[int, CycloValue] = {}
    for fr in framings:
        if fr not in cache:
            cache[fr] = unknot_sum(labels, md, fr)
        out = out * cache[fr]
    return out


def rt_invariant_diagonal(framings: Sequence[int], subset: ClosedSubset, md: ModularData) -> SurdValue:
    """(I(N)/|I(N)|)^sigma I(L) / |I(N)|^n for a diagonal surgery presentation.

    Accepted label sets are those whose degenerates are all even; for a
    quotientable set the |Z|^n factor cancels in the normalization.
    """
    report = degeneracy_report(subset, md)
    if report.odd:
        raise NonModularLabelSet(f"{subset.name} has odd degenerates {report.odd}")
    framings = [int(f) for f in framings]
    i_n = unknot_sum(subset.members, md, -1)
    if i_n.is_zero():
        raise VanishingGaussSum(f"I(N) vanishes on {subset.name}")
    sigma = sum((f > 0) - (f < 0) for f in framings)
    total = omega_state_sum(framings, subset.members, md)
    return _normalize(total, i_n, len(framings), sigma, 1)


def hopf_sum(subset: ClosedSubset, md: ModularData) -> CycloValue:
    """I(H) = sum_{gamma, lam} qdim(gamma) qdim(lam) S_{gamma,lam}."""
    acc = md.field.zero()
    for g in subset.members:
        for lam in subset.members:
            acc = acc + md.qdim(g) * md.qdim(lam) * md.s_entry(g, lam)
    return acc


def quotient_unknot_sum(q: QuotientData, md: ModularData, framing: int) -> CycloValue:
    """Framed omega-unknot over the quotient labels: one orbit of stabilizer s gives s labels of qdim/s."""
    acc = md.field.zero()
    for orbit, s in zip(q.orbits, q.stabilizers):
        g = orbit[0]
        d = md.qdim(g)
        acc = acc + d * d * md.twist(g) ** (framing % md.order) / s
    return acc


def quotient_invariant_relation_check(subset: ClosedSubset, q: QuotientData, md: ModularData, framings: Sequence[int]) -> bool:
    """I(L) = |Z|^n I'(L) on a diagonal presentation."""
    lhs = omega_state_sum(framings, subset.members, md)
    rhs = md.field.one()
    for f in framings:
        rhs = rhs * quotient_unknot_sum(q, md, f)
    return lhs == rhs * (q.group_order ** len(framings))
