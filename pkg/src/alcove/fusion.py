"""The level-k Weyl alcove and its truncated tensor product.

Fusion multiplicities are computed by pushing every weight of one factor's
classical weight diagram through the rho-shifted affine Weyl group action
(reflections in the simple walls and in the wall (x, theta) = k + 1) and
summing the resulting signs.  This is a reindexing of the
Andersen-Paradowski sum over the quantum Weyl group; the literal group-sum
form is kept here as an independent oracle.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import NonInvertible
from .multiplicity import weight_diagram
from .rootdata import CenterElement, RootSystem, Weight, build_root_system

WALL = None


@dataclass(frozen=True)
class AffineRep:
    """Result of moving a weight into the shifted alcove.

    ``representative`` is None exactly when the weight lies on a wall, in
    which case ``sign`` is 0.
    """

    representative: Weight | None
    sign: int

    @property
    def is_wall(self) -> bool:
        return self.sign == 0


class AlcoveContext:
    """Labels of the level-k fusion category of a simple Lie algebra."""

    def __init__(self, rs: RootSystem, level: int) -> None:
        if level < 1:
            raise ValueError("level must be a positive integer")
        self.rs = rs
        self.level = level
        self.labels: list[Weight] = _enumerate(rs, level)
        self.index: dict[Weight, int] = {lam: i for i, lam in enumerate(self.labels)}
        self.dual: dict[Weight, Weight] = {lam: rs.dual(lam) for lam in self.labels}

    def __repr__(self) -> str:
        return f"AlcoveContext({self.rs.lie_type}, k={self.level}, {len(self.labels)} labels)"

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, w: object) -> bool:
        return w in self.index

    @property
    def iota(self) -> Weight:
        return self.rs.zero

    @property
    def kh(self) -> int:
        return self.level + self.rs.h

    @cached_property
    def corners(self) -> list[Weight]:
        """Extreme points k*lambda_i/(lambda_i, theta) that are weights, plus iota."""
        out = [self.iota]
        for i, c in enumerate(self.rs.comarks):
            if self.level % c == 0:
                out.append(tuple((self.level // c) * int(j == i) for j in range(self.rs.rank)))
        return out

    def k_ell(self, z: CenterElement) -> Weight:
        return tuple(self.level * x for x in self.rs.center.ell(z))

    @cached_property
    def table(self) -> FusionTable:
        return FusionTable(self)

    @cached_property
    def modular(self):
        from .modular import ModularData

        return ModularData(self.table)

    @cached_property
    def invertibles(self) -> list[Weight]:
        return invertibles(self.table)

    @cached_property
    def dimensions(self) -> dict[Weight, int]:
        return {lam: self.rs.weyl_dimension(lam) for lam in self.labels}


def _enumerate(rs: RootSystem, k: int) -> list[Weight]:
    marks = rs.comarks
    out: list[Weight] = []

    def rec(prefix: list[int], budget: int) -> None:
        i = len(prefix)
        if i == rs.rank:
            out.append(tuple(prefix))
            return
        for a in range(budget // marks[i] + 1):
            rec(prefix + [a], budget - a * marks[i])

    rec([], k)
    out.sort(key=lambda lam: (rs.level_of(lam), lam))
    return out


def enumerate_alcove(rs: RootSystem | str, k: int) -> AlcoveContext:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    return AlcoveContext(rs, k)


def affine_dominant(ctx: AlcoveContext, mu: Sequence[int]) -> AffineRep:
    """Move mu into the alcove under the rho-shifted affine Weyl group."""
    rs = ctx.rs
    x = [m + 1 for m in mu]
    theta = rs.theta
    marks = rs.comarks
    kh = ctx.kh
    sign = 1
    while True:
        moved = False
        for i in range(rs.rank):
            c = x[i]
            if c < 0:
                row = rs.cartan[i]
                x = [a - c * b for a, b in zip(x, row)]
                sign = -sign
                moved = True
        over = sum(a * b for a, b in zip(x, marks)) - kh
        if over > 0:
            x = [a - over * t for a, t in zip(x, theta)]
            sign = -sign
            moved = True
        if not moved:
            break
    if 0 in x or sum(a * b for a, b in zip(x, marks)) == kh:
        return AffineRep(WALL, 0)
    return AffineRep(tuple(a - 1 for a in x), sign)


def affine_dominant_batch(ctx: AlcoveContext, mu: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``affine_dominant`` over the rows of ``mu``.

    Returns the representatives (rows are meaningless where the sign is 0)
    and the signs.
    """
    rs = ctx.rs
    x = np.array(mu, dtype=np.int64) + 1
    n = x.shape[0]
    sign = np.ones(n, dtype=np.int64)
    cartan = np.array(rs.cartan, dtype=np.int64)
    theta = np.array(rs.theta, dtype=np.int64)
    marks = np.array(rs.comarks, dtype=np.int64)
    kh = ctx.kh
    active = np.arange(n)
    while active.size:
        xa = x[active]
        sa = sign[active]
        moved = np.zeros(active.size, dtype=bool)
        for i in range(rs.rank):
            neg = xa[:, i] < 0
            if neg.any():
                xa[neg] -= xa[neg, i : i + 1] * cartan[i]
                sa[neg] = -sa[neg]
                moved |= neg
        over = xa @ marks - kh
        hit = over > 0
        if hit.any():
            xa[hit] -= over[hit, None] * theta
            sa[hit] = -sa[hit]
            moved |= hit
        x[active] = xa
        sign[active] = sa
        active = active[moved]
    wall = (x == 0).any(axis=1) | (x @ marks == kh)
    sign[wall] = 0
    return x - 1, sign


def fuse_rows(ctx: AlcoveContext, lams: Sequence[Weight], gamma: Weight) -> list[dict[Weight, int]]:
    """lam (x) gamma for every lam in ``lams``, using gamma's weight diagram."""
    if not lams:
        return []
    w, m = weight_diagram(ctx.rs, gamma).arrays
    lam_arr = np.array(lams, dtype=np.int64).reshape(len(lams), ctx.rs.rank)
    pts = (lam_arr[:, None, :] + w[None, :, :]).reshape(-1, ctx.rs.rank)
    reps, signs = affine_dominant_batch(ctx, pts)
    contrib = signs * np.tile(m, len(lams))
    owner = np.repeat(np.arange(len(lams)), len(m))
    keep = contrib != 0
    reps, contrib, owner = reps[keep], contrib[keep], owner[keep]
    rows: list[dict[Weight, int]] = [defaultdict(int) for _ in lams]
    if reps.size:
        # alcove coordinates lie in [0, k], so a mixed-radix code is injective
        base = ctx.level + 1
        codes = owner.astype(np.int64)
        for i in range(ctx.rs.rank):
            codes = codes * base + reps[:, i]
        uniq, inv = np.unique(codes, return_inverse=True)
        sums = np.bincount(inv.reshape(-1), weights=contrib, minlength=len(uniq)).astype(np.int64)
        for code, s in zip(uniq.tolist(), sums.tolist()):
            if s:
                digits = []
                for _ in range(ctx.rs.rank):
                    code, d = divmod(code, base)
                    digits.append(d)
                rows[code][tuple(reversed(digits))] = s
    out = []
    for row in rows:
        row = {eta: n for eta, n in row.items() if n}
        if any(n < 0 for n in row.values()):
            raise AssertionError(f"negative fusion multiplicity in {row}")
        out.append(row)
    return out


def fuse(ctx: AlcoveContext, lam: Sequence[int], gamma: Sequence[int]) -> dict[Weight, int]:
    """The truncated tensor product lam (x) gamma as {eta: N_{lam,gamma}^eta}."""
    lam, gamma = tuple(lam), tuple(gamma)
    for w in (lam, gamma):
        if w not in ctx:
            raise ValueError(f"{w} is not in the level-{ctx.level} alcove")
    return fuse_rows(ctx, [lam], gamma)[0]


class FusionTable:
    """Sparse fusion multiplicities over the alcove.

    Rows are computed lazily (each unordered pair once, using the factor with
    the smaller classical dimension for the weight diagram); ``seal`` fills
    the whole table and freezes it.
    """

    def __init__(self, ctx: AlcoveContext) -> None:
        self.ctx = ctx
        self._rows: dict[tuple[int, int], dict[Weight, int]] = {}
        self.sealed = False

    def _key(self, lam: Weight, gamma: Weight) -> tuple[int, int]:
        i, j = self.ctx.index[lam], self.ctx.index[gamma]
        return (i, j) if i <= j else (j, i)

    def _diagram_operand(self, lam: Weight, gamma: Weight) -> tuple[Weight, Weight]:
        dims = self.ctx.dimensions
        if (dims[gamma], self.ctx.index[gamma]) <= (dims[lam], self.ctx.index[lam]):
            return lam, gamma
        return gamma, lam

    def row(self, lam: Sequence[int], gamma: Sequence[int]) -> dict[Weight, int]:
        lam, gamma = tuple(lam), tuple(gamma)
        key = self._key(lam, gamma)
        hit = self._rows.get(key)
        if hit is None:
            if self.sealed:
                raise KeyError((lam, gamma))
            a, b = self._diagram_operand(lam, gamma)
            hit = self._rows[key] = fuse_rows(self.ctx, [a], b)[0]
        return hit

    def prefetch(self, pairs: Iterable[tuple[Weight, Weight]]) -> None:
        """Compute many rows at once, grouped by the diagram operand."""
        groups: dict[Weight, dict[Weight, None]] = defaultdict(dict)
        for lam, gamma in pairs:
            key = self._key(lam, gamma)
            if key in self._rows:
                continue
            a, b = self._diagram_operand(lam, gamma)
            groups[b][a] = None
        for b, members in groups.items():
            lams = list(members)
            # bound the batch so the point array stays moderate
            size = max(1, 400_000 // max(1, len(weight_diagram(self.ctx.rs, b))))
            for start in range(0, len(lams), size):
                chunk = lams[start : start + size]
                for a, row in zip(chunk, fuse_rows(self.ctx, chunk, b)):
                    self._rows[self._key(a, b)] = row

    def seal(self) -> FusionTable:
        if not self.sealed:
            labels = self.ctx.labels
            self.prefetch(itertools.combinations_with_replacement(labels, 2))
            self.sealed = True
        return self

    def N(self, lam: Weight, gamma: Weight, eta: Weight) -> int:
        return self.row(lam, gamma).get(eta, 0)

    def triples(self) -> Iterator[tuple[Weight, Weight, Weight, int]]:
        labels = self.ctx.labels
        for lam in labels:
            for gamma in labels:
                row = self.row(lam, gamma)
                for eta in labels:
                    if eta in row:
                        yield lam, gamma, eta, row[eta]


def is_invertible(table: FusionTable, u: Weight) -> bool:
    return table.row(u, table.ctx.dual[u]) == {table.ctx.iota: 1}


def quantum_dimension_float(ctx: AlcoveContext, lam: Weight) -> float:
    """qdim(lam) under the principal embedding, in double precision."""
    rs = ctx.rs
    out = 1.0
    for a in rs.positive_roots:
        top = float(rs.inner(tuple(x + 1 for x in lam), a))
        bot = float(rs.inner(rs.rho, a))
        out *= math.sin(math.pi * top / ctx.kh) / math.sin(math.pi * bot / ctx.kh)
    return out


# Quantum dimensions below 2 are 2cos(pi/n), so any non-invertible has qdim >= sqrt(2).
_INVERTIBLE_QDIM_CUTOFF = 1.2


def invertibles(table: FusionTable) -> list[Weight]:
    """All labels u with u (x) u^dagger = iota, decided by fusion.

    A floating-point quantum dimension screen only selects the candidates.
    """
    ctx = table.ctx
    cands = [u for u in ctx.labels if quantum_dimension_float(ctx, u) < _INVERTIBLE_QDIM_CUTOFF]
    table.prefetch((u, ctx.dual[u]) for u in cands)
    return [u for u in cands if is_invertible(table, u)]


def phi(table: FusionTable, u: Weight, gamma: Weight) -> Weight:
    """phi_u(gamma): the single simple summand of u (x) gamma."""
    if not is_invertible(table, u):
        raise NonInvertible(f"{u} is not invertible at level {table.ctx.level}")
    row = table.row(u, gamma)
    (eta, n), = row.items()
    assert n == 1
    return eta


def invertible_group(table: FusionTable) -> dict[tuple[Weight, Weight], Weight]:
    """Multiplication table of the invertible labels."""
    inv = invertibles(table)
    return {(u, v): phi(table, u, v) for u in inv for v in inv}


def outside_k_ell(ctx: AlcoveContext) -> list[Weight]:
    """Invertibles that are not of the form k*l(z).

    Non-empty only in the E8 level-2 case, where the associated phi is an
    isometry of the alcove but not of the simplex.
    """
    image = {ctx.k_ell(z) for z in ctx.rs.center.elements}
    return [u for u in ctx.invertibles if u not in image]


def recover_tau(table: FusionTable, u: Weight) -> list[list[int]] | None:
    """Linear part of gamma -> phi_u(gamma) - u, as an integer matrix on Dynkin labels.

    Column i is the image of lambda_i; returns None when some lambda_i is not
    in the alcove (level below its comark).
    """
    ctx = table.ctx
    rs = ctx.rs
    cols = []
    for i in range(rs.rank):
        f = rs.fundamental(i)
        if f not in ctx:
            return None
        img = phi(table, u, f)
        cols.append([a - b for a, b in zip(img, u)])
    return [[cols[j][i] for j in range(rs.rank)] for i in range(rs.rank)]


def weyl_group_matrices(rs: RootSystem) -> list[tuple[np.ndarray, int]]:
    """All classical Weyl group elements as (matrix on Dynkin labels, sign)."""
    r = rs.rank
    gens = []
    for i in range(r):
        m = np.eye(r, dtype=np.int64)
        m[i, :] -= np.array(rs.cartan[i], dtype=np.int64)
        gens.append(m.T)  # acts on column vectors: s_i(w) = w - w_i * alpha_i
    ident = np.eye(r, dtype=np.int64)
    seen = {ident.tobytes(): (ident, 1)}
    frontier = [(ident, 1)]
    while frontier:
        nxt = []
        for m, s in frontier:
            for g in gens:
                p = g @ m
                key = p.tobytes()
                if key not in seen:
                    seen[key] = (p, -s)
                    nxt.append((p, -s))
        frontier = nxt
    return list(seen.values())


def fusion_coefficient_literal(ctx: AlcoveContext, lam: Weight, gamma: Weight, eta: Weight) -> int:
    """N_{lam,gamma}^eta as the explicit signed sum over quantum Weyl group elements.

    Every element is w followed by a translation by (k+h) times a coroot
    lattice vector; only translations that can reach the support of
    gamma's diagram are enumerated.
    """
    rs = ctx.rs
    r = rs.rank
    diag = weight_diagram(rs, gamma)
    kh = ctx.kh
    eta_rho = np.array(eta, dtype=np.int64) + 1
    lam_rho = np.array(lam, dtype=np.int64) + 1
    coroots = np.array(
        [np.array(rs.cartan[i], dtype=np.int64) * _as_int(2 / rs.root_gram[i][i]) for i in range(r)]
    )

    def norm(v: Sequence[int]) -> float:
        return math.sqrt(float(rs.inner(tuple(int(x) for x in v), tuple(int(x) for x in v))))

    radius = norm(gamma) + norm(tuple(eta_rho)) + norm(tuple(lam_rho))
    # coefficient of alpha_i^vee in t is (t, lambda_i)
    bounds = [int(math.ceil(radius / kh * norm(rs.fundamental(i)))) + 1 for i in range(r)]
    total = 0
    for w, s in weyl_group_matrices(rs):
        base = w @ eta_rho
        for coeffs in itertools.product(*(range(-b, b + 1) for b in bounds)):
            point = base + kh * (np.array(coeffs, dtype=np.int64) @ coroots)
            total += s * diag[tuple(int(x) for x in (point - lam_rho))]
    return total


def _as_int(x) -> int:
    assert x.denominator == 1
    return int(x)
