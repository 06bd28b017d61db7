"""Closed label subsets, degenerate objects, modularity verdicts and products.

A label lam of a closed subset is degenerate when S_{lam,gamma} equals
qdim(lam) qdim(gamma) for every gamma in the subset.  The scan applies that
test to every member, so the fact that degenerates turn out to be
invertible is checked here rather than assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .errors import (
    DegenerateNotInvertible,
    FullCenterOfD2n,
    InternalConsistencyError,
    NonCyclicSubgroup,
    OddDegenerate,
)
from .fusion import AlcoveContext, is_invertible, phi
from .modular import ModularData
from .rootdata import CenterElement, RootSystem, Subgroup, Weight, center_character

Kind = Literal["gamma", "delta", "explicit"]

# closure is verified exhaustively below this many members unless requested
AUTO_CLOSURE_LIMIT = 120
# exact det S cross-check of a Modular verdict below this many members
AUTO_DET_LIMIT = 60


@dataclass(frozen=True)
class ClosedSubset:
    ctx: AlcoveContext = field(repr=False)
    kind: Kind
    members: tuple[Weight, ...]
    subgroup: Subgroup | None = None

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, w: object) -> bool:
        return w in self.member_set

    @property
    def member_set(self) -> frozenset[Weight]:
        return frozenset(self.members)

    @property
    def name(self) -> str:
        if self.kind == "explicit":
            return f"explicit[{len(self.members)}]"
        sym = "Gamma" if self.kind == "gamma" else "Delta"
        return f"{sym}_{self.subgroup.label if self.subgroup else 'Z1'}"


def gamma_subset(ctx: AlcoveContext, z: Subgroup, verify: bool | None = None) -> ClosedSubset:
    """Labels annihilated by every central character of Z."""
    rs = ctx.rs
    members = tuple(lam for lam in ctx.labels if all(center_character(rs, g, lam) == 0 for g in z.elements))
    out = ClosedSubset(ctx, "gamma", members, z)
    _maybe_verify(out, verify)
    return out


def delta_subset(ctx: AlcoveContext, z: Subgroup, verify: bool | None = None) -> ClosedSubset:
    """The invertible corners k l(z) for z in Z."""
    members = tuple(sorted({ctx.k_ell(g) for g in z.elements}, key=ctx.index.__getitem__))
    out = ClosedSubset(ctx, "delta", members, z)
    _maybe_verify(out, verify)
    return out


def explicit_subset(ctx: AlcoveContext, members: Iterable[Sequence[int]], verify: bool = True) -> ClosedSubset:
    ms = tuple(sorted({tuple(m) for m in members}, key=ctx.index.__getitem__))
    out = ClosedSubset(ctx, "explicit", ms)
    _maybe_verify(out, verify)
    return out


def full_alcove(ctx: AlcoveContext) -> ClosedSubset:
    return gamma_subset(ctx, ctx.rs.center.cyclic(ctx.rs.center.identity), verify=False)


def _maybe_verify(subset: ClosedSubset, verify: bool | None) -> None:
    if verify is None:
        verify = len(subset) <= AUTO_CLOSURE_LIMIT
    if verify and not is_closed(subset):
        raise InternalConsistencyError(f"{subset.name} is not closed")


def is_closed(subset: ClosedSubset) -> bool:
    """Closed under duality and every fusion product stays inside."""
    ctx = subset.ctx
    ms = subset.member_set
    if any(ctx.dual[m] not in ms for m in subset.members):
        return False
    table = ctx.table
    pairs = list(itertools.combinations_with_replacement(subset.members, 2))
    table.prefetch(pairs)
    return all(set(table.row(a, b)) <= ms for a, b in pairs)


# --- degeneracy ---------------------------------------------------------------


@dataclass(frozen=True)
class DegenerateInfo:
    label: Weight
    parity: Literal["even", "odd"]
    center_element: CenterElement | None
    arithmetic_parity: Literal["even", "odd"] | None


@dataclass(frozen=True)
class DegeneracyReport:
    subset: ClosedSubset = field(repr=False)
    degenerates: tuple[DegenerateInfo, ...]
    subgroup: Subgroup | None
    group_table: dict[tuple[Weight, Weight], Weight] = field(repr=False)
    outside_center_image: tuple[Weight, ...] = ()

    @property
    def labels(self) -> tuple[Weight, ...]:
        return tuple(d.label for d in self.degenerates)

    @property
    def all_even(self) -> bool:
        return all(d.parity == "even" for d in self.degenerates)

    @property
    def odd(self) -> tuple[Weight, ...]:
        return tuple(d.label for d in self.degenerates if d.parity == "odd")


def _probe_order(subset: ClosedSubset) -> list[Weight]:
    dims = subset.ctx.dimensions
    idx = subset.ctx.index
    return sorted((g for g in subset.members if g != subset.ctx.iota), key=lambda g: (dims[g], idx[g]))


def degenerate_labels(subset: ClosedSubset, md: ModularData) -> list[Weight]:
    """Members lam with S_{lam,gamma} = qdim(lam) qdim(gamma) for all gamma in the subset."""
    candidates = list(subset.members)
    for gamma in _probe_order(subset):
        if len(candidates) <= 1:
            break
        md.prefetch((lam, gamma) for lam in candidates)
        dg = md.qdim(gamma)
        candidates = [lam for lam in candidates if md.s_entry(lam, gamma) == md.qdim(lam) * dg]
    return candidates


def degeneracy_report(subset: ClosedSubset, md: ModularData) -> DegeneracyReport:
    ctx = subset.ctx
    rs = ctx.rs
    table = ctx.table
    center = rs.center
    corner_of = {ctx.k_ell(z): z for z in center.elements}
    infos = []
    for lam in degenerate_labels(subset, md):
        if not is_invertible(table, lam):
            raise DegenerateNotInvertible(f"{lam} is degenerate in {subset.name} but not invertible")
        c = md.twist(lam)
        if c == 1:
            parity = "even"
        elif c == -1:
            parity = "odd"
        else:
            raise InternalConsistencyError(f"degenerate {lam} has twist {c}, not +-1")
        z = corner_of.get(lam)
        arith = None
        if z is not None:
            arith = _arithmetic_parity(ctx, z)
            chars_ok = all(center_character(rs, z, g) == 0 for g in subset.members)
            if arith != parity or not chars_ok:
                raise InternalConsistencyError(
                    f"degenerate {lam}: twist parity {parity}, arithmetic parity {arith}, characters trivial {chars_ok}"
                )
        infos.append(DegenerateInfo(lam, parity, z, arith))
    labels = [d.label for d in infos]
    group = {(a, b): phi(table, a, b) for a in labels for b in labels}
    if any(v not in labels for v in group.values()):
        raise InternalConsistencyError("degenerate labels are not closed under fusion")
    outside = tuple(d.label for d in infos if d.center_element is None)
    sub = None
    if not outside:
        try:
            sub = center.subgroup_from_elements(d.center_element for d in infos)
        except (FullCenterOfD2n, NonCyclicSubgroup):
            sub = None
    return DegeneracyReport(subset, tuple(infos), sub, group, outside)


def _arithmetic_parity(ctx: AlcoveContext, z: CenterElement) -> Literal["even", "odd"] | None:
    """Parity of k (l, l) for l = l(z); None when it is not an integer."""
    ell = ctx.rs.center.ell(z)
    val = ctx.level * ctx.rs.inner(ell, ell)
    if val.denominator != 1:
        return None
    return "even" if val.numerator % 2 == 0 else "odd"


# --- verdicts -----------------------------------------------------------------


@dataclass(frozen=True)
class QuotientData:
    subset: ClosedSubset = field(repr=False)
    orbits: tuple[tuple[Weight, ...], ...]
    stabilizers: tuple[int, ...]
    group_order: int

    @property
    def quotient_count(self) -> int:
        return sum(self.stabilizers)

    @property
    def torus_dimension(self) -> int:
        return sum(self.stabilizers)

    @property
    def acts_freely(self) -> bool:
        return all(s == 1 for s in self.stabilizers)


@dataclass(frozen=True)
class Verdict:
    kind: Literal["Modular", "Quotientable", "Obstructed"]
    report: DegeneracyReport = field(repr=False)
    quotient: QuotientData | None = None
    det_checked: bool = False

    @property
    def odd_degenerates(self) -> tuple[Weight, ...]:
        return self.report.odd

    def __str__(self) -> str:
        return self.kind


def quotient_data(subset: ClosedSubset, report: DegeneracyReport) -> QuotientData:
    """Orbits and stabilizers of the degenerate group acting by phi on the members."""
    if report.odd:
        raise OddDegenerate(f"odd degenerates {report.odd} in {subset.name}")
    table = subset.ctx.table
    group = report.labels
    seen: set[Weight] = set()
    orbits, stabs = [], []
    for lam in subset.members:
        if lam in seen:
            continue
        images = [phi(table, u, lam) for u in group]
        orbit = tuple(sorted(set(images), key=subset.ctx.index.__getitem__))
        stab = sum(1 for im in images if im == lam)
        if len(orbit) * stab != len(group):
            raise InternalConsistencyError("orbit-stabilizer relation failed")
        seen.update(orbit)
        orbits.append(orbit)
        stabs.append(stab)
    return QuotientData(subset, tuple(orbits), tuple(stabs), len(group))


def modularity_verdict(subset: ClosedSubset, md: ModularData, check_det: bool | None = None) -> Verdict:
    report = degeneracy_report(subset, md)
    if check_det is None:
        check_det = len(subset) <= AUTO_DET_LIMIT
    if report.labels == (subset.ctx.iota,):
        if check_det and not md.is_modular(subset.members):
            raise InternalConsistencyError(f"{subset.name}: no degenerates but det S = 0")
        return Verdict("Modular", report, None, check_det)
    if check_det and md.is_modular(subset.members):
        raise InternalConsistencyError(f"{subset.name}: nontrivial degenerates but det S != 0")
    if report.all_even:
        return Verdict("Quotientable", report, quotient_data(subset, report), check_det)
    return Verdict("Obstructed", report, None, check_det)


# --- Dijkgraaf-Witten levels ---------------------------------------------------


def dw_condition(rs: RootSystem, z: Subgroup, k: int) -> bool:
    """k (l(z), l(z)) / 2 is an integer for every z in Z."""
    for g in z.elements:
        ell = rs.center.ell(g)
        if (k * rs.inner(ell, ell) / 2).denominator != 1:
            return False
    return True


def dw_levels(rs: RootSystem, z: Subgroup, k_max: int) -> list[int]:
    return [k for k in range(1, k_max + 1) if dw_condition(rs, z, k)]


def embeds_as_even_degenerates(ctx: AlcoveContext, z: Subgroup, verdict: Verdict) -> bool:
    """Verdict is Modular or Quotientable and the degenerates are exactly k l[Z], all even."""
    if verdict.kind == "Obstructed":
        return False
    target = {ctx.k_ell(g) for g in z.elements}
    return set(verdict.report.labels) == target and verdict.report.all_even


# --- products -------------------------------------------------------------------


@dataclass(frozen=True)
class ProductDecomposition:
    subset: ClosedSubset = field(repr=False)
    gamma_factor: ClosedSubset
    delta_factor: ClosedSubset
    intersection: tuple[Weight, ...]
    factorization: dict[Weight, tuple[Weight, Weight]] = field(repr=False)
    s_factorization_checked: bool = False

    @property
    def names(self) -> tuple[str, str]:
        return self.gamma_factor.name, self.delta_factor.name


def _product_conditions(
    subset: ClosedSubset, g1: ClosedSubset, g2: ClosedSubset, md: ModularData, report: DegeneracyReport
) -> dict[Weight, tuple[Weight, Weight]] | None:
    ctx = subset.ctx
    table = ctx.table
    ms = subset.member_set
    if not (g1.member_set <= ms and g2.member_set <= ms):
        return None
    # condition 1: the intersection consists of even degenerates of the subset
    even = {d.label for d in report.degenerates if d.parity == "even"}
    if not (g1.member_set & g2.member_set) <= even:
        return None
    # condition 2 and 4: products are simple members and twists multiply
    table.prefetch(itertools.product(g1.members, g2.members))
    fact: dict[Weight, tuple[Weight, Weight]] = {}
    for a, b in itertools.product(g1.members, g2.members):
        row = table.row(a, b)
        if len(row) != 1:
            return None
        ((eta, n),) = row.items()
        if n != 1 or eta not in ms:
            return None
        if md.twist(eta) != md.twist(a) * md.twist(b):
            return None
        fact.setdefault(eta, (a, b))
    # condition 3: every member is such a product
    if set(fact) != ms:
        return None
    return fact


def _s_factorizes(
    md: ModularData, g1: ClosedSubset, g2: ClosedSubset, fact: dict[Weight, tuple[Weight, Weight]]
) -> bool:
    for x, (a, b) in fact.items():
        for y, (c, d) in fact.items():
            if md.s_entry(x, y) != md.s_entry(a, c) * md.s_entry(b, d):
                return False
    return True


def decompose_product(
    subset: ClosedSubset, md: ModularData, all: bool = False
) -> ProductDecomposition | list[ProductDecomposition] | None:
    """Split the subset as Gamma_{Z'} x Delta_Z with Z a nontrivial subgroup of Z'.

    A Delta-kind subset is never split further.  Returns the decomposition with
    the largest Gamma factor, or every one when ``all`` is set.
    """
    found: list[ProductDecomposition] = []
    if subset.kind != "delta":
        ctx = subset.ctx
        subs = ctx.rs.center.cyclic_subgroups()
        report = degeneracy_report(subset, md)
        for zp in subs:
            g1 = gamma_subset(ctx, zp, verify=False)
            if g1.member_set == subset.member_set:
                continue
            for z in subs:
                if z.order == 1 or not z.issubset(zp):
                    continue
                g2 = delta_subset(ctx, z, verify=False)
                fact = _product_conditions(subset, g1, g2, md, report)
                if fact is None:
                    continue
                inter = tuple(sorted(g1.member_set & g2.member_set, key=ctx.index.__getitem__))
                checked = False
                if len(inter) == 1 and md.is_modular(g1.members) and md.is_modular(g2.members):
                    if not _s_factorizes(md, g1, g2, fact):
                        raise InternalConsistencyError("S-matrix does not factor over a product decomposition")
                    checked = True
                found.append(ProductDecomposition(subset, g1, g2, inter, fact, checked))
    found.sort(key=lambda p: -len(p.gamma_factor))
    if all:
        return found
    return found[0] if found else None


def lemma_innerproduct_holds(md: ModularData, u: Weight, gamma: Weight) -> bool:
    """S_{u,gamma}/qdim(gamma) = C_{phi_u(gamma)} / (C_u C_gamma) = e^(2 pi i (l, gamma)) for u = k l."""
    ctx = md.ctx
    z = {ctx.k_ell(g): g for g in ctx.rs.center.elements}.get(u)
    if z is None:
        return False
    lhs = md.s_entry(u, gamma)
    img = phi(ctx.table, u, gamma)
    ratio = md.twist(img) * md.twist(u).inverse() * md.twist(gamma).inverse()
    char = md.character(ctx.rs.center.ell(z), gamma)
    qd = md.qdim(gamma)
    return lhs == qd * ratio and ratio == char

