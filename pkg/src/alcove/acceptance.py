"""The reproducible acceptance suite.

Each check returns ``(passed, detail)``; ``run_all`` yields one result per
criterion in order.  The test module and the ``accept`` command both call
into here.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .analysis import (
    decompose_product,
    degeneracy_report,
    degenerate_labels,
    delta_subset,
    dw_levels,
    embeds_as_even_degenerates,
    full_alcove,
    gamma_subset,
    lemma_innerproduct_holds,
    modularity_verdict,
)
from .errors import AlcoveError, DegenerateNotInvertible, NonModularLabelSet, OddDegenerate
from .fusion import AlcoveContext, fuse_rows, weyl_group_matrices, enumerate_alcove, is_invertible
from .invariants import (
    GaussSumSpec,
    LinkingMatrix,
    kirby_invariance,
    moo_invariant,
    quotient_invariant_relation_check,
    rt_invariant_diagonal,
)
from .rootdata import build_root_system

FULL_TYPES = ("A1", "A2", "B2", "G2", "A3", "C3")
RANK2_TYPES = ("A1", "A2", "B2", "G2")
DW_TYPES = ("A1", "A2", "A3", "A4", "B2", "C3")


@dataclass(frozen=True)
class Result:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.number}: {self.title} ({self.detail}; {self.seconds:.1f}s)"


def _ctx(t: str, k: int) -> AlcoveContext:
    return enumerate_alcove(build_root_system(t), k)


def full_alcove_modularity() -> tuple[bool, str]:
    bad = []
    for t in FULL_TYPES:
        for k in range(1, 6):
            ctx = _ctx(t, k)
            md = ctx.modular
            degs = degenerate_labels(full_alcove(ctx), md)
            if degs != [ctx.iota] or not md.is_modular():
                bad.append(f"{t} k={k}")
    return not bad, f"{len(FULL_TYPES) * 5} cases" + (f", failing {bad}" if bad else "")


def a1_parity() -> tuple[bool, str]:
    bad = []
    for k in range(1, 13):
        ctx = _ctx("A1", k)
        v = modularity_verdict(gamma_subset(ctx, ctx.rs.center.subgroup("Z2")), ctx.modular)
        want = "Modular" if k % 2 else ("Obstructed" if k % 4 == 2 else "Quotientable")
        if v.kind != want:
            bad.append(f"k={k}: {v.kind}")
    return not bad, "levels 1-12" + (f", failing {bad}" if bad else "")


def dw_level_agreement(types: tuple[str, ...] = DW_TYPES, k_max: int = 12) -> tuple[bool, str]:
    bad = []
    checked = 0
    for t in types:
        rs = build_root_system(t)
        for z in rs.center.cyclic_subgroups():
            scan = []
            for k in range(1, k_max + 1):
                ctx = _ctx(t, k)
                v = modularity_verdict(gamma_subset(ctx, z), ctx.modular)
                if embeds_as_even_degenerates(ctx, z, v):
                    scan.append(k)
            checked += 1
            if scan != dw_levels(rs, z, k_max):
                bad.append(f"{t} {z.label}: scan {scan} vs {dw_levels(rs, z, k_max)}")
    return not bad, f"{checked} (type, subgroup) pairs" + (f", failing {bad}" if bad else "")


def degenerates_invertible() -> tuple[bool, str]:
    bad = []
    subsets = 0
    for t in RANK2_TYPES:
        for k in range(1, 6):
            ctx = _ctx(t, k)
            md = ctx.modular
            for z in ctx.rs.center.cyclic_subgroups():
                for sub in (gamma_subset(ctx, z), delta_subset(ctx, z)):
                    subsets += 1
                    try:
                        report = degeneracy_report(sub, md)
                    except DegenerateNotInvertible as exc:
                        bad.append(str(exc))
                        continue
                    if not all(is_invertible(ctx.table, lam) for lam in report.labels):
                        bad.append(f"{t} k={k} {sub.name}")
    return not bad, f"{subsets} subsets" + (f", failing {bad}" if bad else "")


def inner_product_lemma() -> tuple[bool, str]:
    bad = []
    pairs = 0
    for t in FULL_TYPES:
        for k in range(1, 6):
            ctx = _ctx(t, k)
            md = ctx.modular
            for u in ctx.invertibles:
                md.prefetch((u, g) for g in ctx.labels)
                for g in ctx.labels:
                    pairs += 1
                    if not lemma_innerproduct_holds(md, u, g):
                        bad.append(f"{t} k={k} u={u} gamma={g}")
    return not bad, f"{pairs} pairs" + (f", failing {bad[:5]}" if bad else "")


def fusion_ring_failures(ctx: AlcoveContext, triples=None) -> list[str]:
    """Associativity, duality symmetries, qdim multiplicativity and the summand lemmas."""
    table = ctx.table
    md = ctx.modular
    labels = ctx.labels
    dual = ctx.dual
    iota = ctx.iota
    out: list[str] = []
    pairs = list(itertools.product(labels, labels)) if triples is None else sorted(
        {(a, b) for a, b, _ in triples} | {(b, c) for _, b, c in triples}
    )
    table.prefetch(pairs)

    def N(a, b, c):
        return table.N(a, b, c)

    for a, b in pairs:
        row = table.row(a, b)
        flipped = fuse_rows(ctx, [b], a)[0]
        if row != flipped:
            out.append(f"commutativity {a} {b}")
        if N(a, b, iota) != int(a == dual[b]):
            out.append(f"unit {a} {b}")
        for c in row:
            n = row[c]
            if N(b, dual[c], dual[a]) != n or N(dual[a], dual[b], dual[c]) != n:
                out.append(f"duality {a} {b} {c}")
        prod = md.field.zero()
        for c, n in row.items():
            prod = prod + md.qdim(c) * n
        if prod != md.qdim(a) * md.qdim(b):
            out.append(f"qdim {a} {b}")
    trip = itertools.product(labels, repeat=3) if triples is None else triples
    for a, b, c in trip:
        left: dict = {}
        for m, n in table.row(a, b).items():
            for v, n2 in table.row(m, c).items():
                left[v] = left.get(v, 0) + n * n2
        right: dict = {}
        for m, n in table.row(b, c).items():
            for v, n2 in table.row(a, m).items():
                right[v] = right.get(v, 0) + n * n2
        if left != right:
            out.append(f"associativity {a} {b} {c}")
    out.extend(_summand_lemma_failures(ctx, pairs))
    return out


def _summand_lemma_failures(ctx: AlcoveContext, pairs) -> list[str]:
    rs = ctx.rs
    table = ctx.table
    out = []
    weyl = weyl_group_matrices(rs)
    for a, b in pairs:
        row = table.row(a, b)
        targets = set()
        for w, _ in weyl:
            img = tuple(int(x) for x in np.array(a) + w @ np.array(b))
            if img in ctx:
                targets.add(img)
        for t in targets:
            if row.get(t) != 1:
                out.append(f"summand lemma {a} {b} -> {t}")
    short = [i for i in range(rs.rank) if not rs.is_long(i)]
    corners = set(ctx.corners)
    for lam in ctx.labels:
        row = table.row(lam, ctx.dual[lam])
        if ctx.level >= 2 and lam not in corners and row.get(rs.theta, 0) < 1:
            out.append(f"theta lemma {lam}")
        if short and any(lam[i] for i in short) and row.get(rs.beta, 0) < 1:
            out.append(f"beta lemma {lam}")
    return out


def fusion_ring_suite(seed: int = 20240611, random_triples: int = 500) -> tuple[bool, str]:
    bad = []
    for t in RANK2_TYPES:
        for k in range(1, 5):
            fails = fusion_ring_failures(_ctx(t, k))
            bad.extend(f"{t} k={k}: {f}" for f in fails)
    rng = random.Random(seed)
    for t in ("A3", "C3"):
        for k in range(1, 4):
            ctx = _ctx(t, k)
            trip = [tuple(rng.choice(ctx.labels) for _ in range(3)) for _ in range(random_triples)]
            bad.extend(f"{t} k={k}: {f}" for f in fusion_ring_failures(ctx, trip))
    return not bad, f"exhaustive rank 2 k<=4, {random_triples} random triples per A3/C3 level" + (
        f", failing {bad[:5]}" if bad else ""
    )


def product_decomposition() -> tuple[bool, str]:
    bad = []
    for k in (1, 3, 5, 7):
        ctx = _ctx("A1", k)
        d = decompose_product(full_alcove(ctx), ctx.modular)
        if d is None or d.names != ("Gamma_Z2:1", "Delta_Z2:1") or not d.s_factorization_checked:
            bad.append(f"k={k}: {d and d.names}")
    for k in (2, 4):
        ctx = _ctx("A1", k)
        d = decompose_product(full_alcove(ctx), ctx.modular)
        if d is not None:
            bad.append(f"k={k}: unexpected {d.names}")
    return not bad, "A1 k=1..7" + (f", failing {bad}" if bad else "")


MOO_CASES = (("A1", 1), ("A1", 2), ("A1", 3), ("A1", 4), ("A2", 1), ("A2", 2), ("A2", 3))


def _delta_of(t: str, k: int):
    ctx = _ctx(t, k)
    z = ctx.rs.center.cyclic_subgroups()[-1]
    delta = delta_subset(ctx, z)
    return ctx, delta


def moo_kirby(seed: int = 7, count: int = 200) -> tuple[bool, str]:
    bad = []
    specs = []
    refused = []
    for t, k in MOO_CASES:
        ctx, delta = _delta_of(t, k)
        md = ctx.modular
        try:
            spec = GaussSumSpec.from_delta(delta, md)
        except OddDegenerate:
            # the diagonal evaluation must refuse as well
            try:
                rt_invariant_diagonal([0], delta, md)
                bad.append(f"{t} k={k}: diagonal evaluation accepted an odd degenerate")
            except NonModularLabelSet:
                refused.append(f"{t} k={k}")
            continue
        specs.append(spec)
        for n in range(0, 5):
            for fr in itertools.product(range(-3, 4), repeat=n):
                if moo_invariant(LinkingMatrix.diagonal(fr), spec) != rt_invariant_diagonal(fr, delta, md):
                    bad.append(f"{t} k={k} framings {fr}")
    per = max(1, count // len(set(specs)))
    for j, spec in enumerate(sorted(set(specs), key=lambda s: (s.N, s.r_exponent))):
        bad.extend(kirby_invariance(spec, per, seed + j))
    return not bad, (
        f"{per} move sequences per spec over {len(set(specs))} specs, diagonal agreement n<=4"
        + (f", refused (odd degenerate) {refused}" if refused else "")
        + (f", failing {bad[:5]}" if bad else "")
    )


def quotient_relation() -> tuple[bool, str]:
    bad = []
    checked = 0
    for k in (4, 8):
        ctx = _ctx("A1", k)
        md = ctx.modular
        sub = gamma_subset(ctx, ctx.rs.center.subgroup("Z2"))
        v = modularity_verdict(sub, md)
        if v.quotient is None:
            bad.append(f"k={k}: not quotientable")
            continue
        for n in range(0, 4):
            for fr in itertools.product(range(-3, 4), repeat=n):
                checked += 1
                if not quotient_invariant_relation_check(sub, v.quotient, md, fr):
                    bad.append(f"k={k} {fr}")
    return not bad, f"{checked} presentations" + (f", failing {bad[:5]}" if bad else "")


def torus_dimension() -> tuple[bool, str]:
    ctx = _ctx("A1", 4)
    v = modularity_verdict(gamma_subset(ctx, ctx.rs.center.subgroup("Z2")), ctx.modular)
    q = v.quotient
    if q is None:
        return False, f"verdict {v.kind}"
    ok = q.quotient_count == 3 and set(zip(q.orbits, q.stabilizers)) == {(((0,), (4,)), 1), (((2,),), 2)}
    return ok, f"count {q.quotient_count}, orbits {list(zip(q.orbits, q.stabilizers))}"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "full alcove is modular", full_alcove_modularity),
    (2, "A1 Gamma_Z2 parity pattern", a1_parity),
    (3, "DW levels match verdict scans", dw_level_agreement),
    (4, "degenerates are invertible", degenerates_invertible),
    (5, "inner-product lemma", inner_product_lemma),
    (6, "fusion ring identities", fusion_ring_suite),
    (7, "product decomposition", product_decomposition),
    (8, "MOO Kirby invariance and agreement", moo_kirby),
    (9, "quotient invariant relation", quotient_relation),
    (10, "torus dimension", torus_dimension),
]


def run_one(number: int) -> Result:
    for n, title, fn in CRITERIA:
        if n == number:
            start = time.perf_counter()
            try:
                ok, detail = fn()
            except AlcoveError as exc:
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            return Result(n, title, ok, detail, time.perf_counter() - start)
    raise KeyError(number)


def run_all(numbers=None) -> Iterator[Result]:
    for n, _, _ in CRITERIA:
        if numbers is None or n in numbers:
            yield run_one(n)
