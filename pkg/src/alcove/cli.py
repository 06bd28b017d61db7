"""Command-line front end: ``alcove <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, TextIO

from . import __version__
from .analysis import (
    ClosedSubset,
    decompose_product,
    delta_subset,
    dw_condition,
    dw_levels,
    full_alcove,
    gamma_subset,
    modularity_verdict,
)
from .errors import AlcoveError, NonModularLabelSet
from .fusion import AlcoveContext, enumerate_alcove, outside_k_ell
from .invariants import GaussSumSpec, LinkingMatrix, kirby_invariance, moo_invariant, rt_invariant_diagonal
from .multiplicity import CACHE_ENV
from .rootdata import Weight, build_root_system

DEFAULT_MAX_LABELS = 20_000
SCHEMA_ID = "classify-report.v1"


@dataclass
class RunConfig:
    command: str
    lie_type: str | None = None
    level: int | None = None
    subgroup: str | None = None
    output: str = "text"
    numeric: bool = False
    seed: int = 0
    max_labels: int = DEFAULT_MAX_LABELS
    force: bool = False
    extra: dict = field(default_factory=dict)


def fmt(w: Weight) -> str:
    return ",".join(map(str, w))


def _context(cfg: RunConfig) -> AlcoveContext:
    if cfg.level is None or cfg.level < 1:
        raise SystemExit("level must be a positive integer")
    ctx = enumerate_alcove(build_root_system(cfg.lie_type), cfg.level)
    if len(ctx) > cfg.max_labels and not cfg.force:
        raise SystemExit(
            f"{cfg.lie_type} at level {cfg.level} has {len(ctx)} labels, above --max-labels {cfg.max_labels}; "
            "pass --force to continue"
        )
    return ctx


def _subset(ctx: AlcoveContext, spec: str | None) -> ClosedSubset:
    """'full', 'gamma:<Z>' or 'delta:<Z>'; a bare selector means gamma."""
    if spec is None or spec == "full":
        return full_alcove(ctx)
    kind, _, sel = spec.partition(":") if spec.split(":")[0] in ("gamma", "delta") else ("gamma", ":", spec)
    z = ctx.rs.center.subgroup(sel)
    return gamma_subset(ctx, z) if kind == "gamma" else delta_subset(ctx, z)


# --- commands -----------------------------------------------------------------------


def cmd_alcove(cfg: RunConfig, out: TextIO) -> int:
    ctx = _context(cfg)
    inv = set(ctx.invertibles)
    corners = set(ctx.corners)
    md = ctx.modular
    out.write("label\tlevel\tdim\tqdim\tdual\tflags\n")
    for lam in ctx.labels:
        flags = [name for name, on in (("corner", lam in corners), ("invertible", lam in inv)) if on]
        out.write(
            f"{fmt(lam)}\t{ctx.rs.level_of(lam)}\t{ctx.dimensions[lam]}\t"
            f"{md.qdim_numeric[lam]:.15g}\t{fmt(ctx.dual[lam])}\t{','.join(flags) or '-'}\n"
        )
    for u in outside_k_ell(ctx):
        out.write(f"# note: {fmt(u)} is invertible but not of the form k*l(z)\n")
    return 0


def cmd_fusion(cfg: RunConfig, out: TextIO) -> int:
    ctx = _context(cfg)
    table = ctx.table.seal()
    for lam, gamma, eta, n in table.triples():
        out.write(f"{fmt(lam)}\t{fmt(gamma)}\t{fmt(eta)}\t{n}\n")
    return 0


def cmd_smatrix(cfg: RunConfig, out: TextIO) -> int:
    ctx = _context(cfg)
    sub = _subset(ctx, cfg.subgroup)
    md = ctx.modular
    S = md.smatrix(sub.members)
    if cfg.numeric:
        out.write(f"# S-matrix over {sub.name}, principal embedding\n")
    else:
        out.write(f"# S-matrix over {sub.name}; exact entries in Q(zeta_{md.order}) as exponent:coefficient\n")
    out.write("\t".join(["label"] + [fmt(g) for g in sub.members]) + "\n")
    for lam, row in zip(sub.members, S):
        if cfg.numeric:
            cells = [_num(complex(v)) for v in row]
        else:
            cells = [_exact(v) for v in row]
        out.write("\t".join([fmt(lam)] + cells) + "\n")
    return 0


def _num(z: complex) -> str:
    re = 0.0 if abs(z.real) < 1e-13 else z.real
    im = 0.0 if abs(z.imag) < 1e-13 else z.imag
    return f"{re:.15g}" if im == 0 else f"{re:.15g}{im:+.15g}i"


def _exact(v) -> str:
    body = " ".join(f"{e}:{c}" for e, c in v.exact_pairs()) or "0"
    return body if v.den == 1 else f"({body})/{v.den}"


def classify_report(ctx: AlcoveContext, all_factors: bool = False) -> dict:
    md = ctx.modular
    rows = []
    for z in ctx.rs.center.cyclic_subgroups():
        g = gamma_subset(ctx, z)
        d = delta_subset(ctx, z)
        v = modularity_verdict(g, md)
        found = decompose_product(g, md, all=True)
        if not all_factors:
            found = found[:1]
        rows.append(
            {
                "type": str(ctx.rs.lie_type),
                "level": ctx.level,
                "subgroup": z.label,
                "gamma_size": len(g),
                "delta_size": len(d),
                "verdict": v.kind,
                "degenerates": [
                    {"label": fmt(x.label), "parity": x.parity} for x in v.report.degenerates
                ],
                "dw_condition": dw_condition(ctx.rs, z, ctx.level),
                "torus_dim": v.quotient.torus_dimension if v.quotient else (len(g) if v.kind == "Modular" else None),
                "factors": [list(p.names) for p in found],
            }
        )
    return {"schema": SCHEMA_ID, "type": str(ctx.rs.lie_type), "level": ctx.level, "results": rows}


def cmd_classify(cfg: RunConfig, out: TextIO) -> int:
    ctx = _context(cfg)
    report = classify_report(ctx, cfg.extra.get("all", False))
    if cfg.output == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return 0
    out.write(f"{report['type']} level {report['level']}: {len(ctx)} labels\n")
    for r in report["results"]:
        degs = ", ".join(f"{d['label']} ({d['parity']})" for d in r["degenerates"])
        factors = "; ".join(" x ".join(f) for f in r["factors"]) or "none"
        out.write(
            f"{r['subgroup']}: |Gamma|={r['gamma_size']} |Delta|={r['delta_size']} verdict={r['verdict']} "
            f"degenerates=[{degs}] dw={'yes' if r['dw_condition'] else 'no'} "
            f"torus_dim={r['torus_dim'] if r['torus_dim'] is not None else '-'} factors={factors}\n"
        )
    return 0


def cmd_dw_levels(cfg: RunConfig, out: TextIO) -> int:
    rs = build_root_system(cfg.lie_type)
    z = rs.center.subgroup(cfg.subgroup)
    levels = dw_levels(rs, z, cfg.extra["k_max"])
    out.write(", ".join(map(str, levels)) + "\n")
    return 0


def cmd_quotient(cfg: RunConfig, out: TextIO) -> int:
    ctx = _context(cfg)
    sub = _subset(ctx, cfg.subgroup)
    v = modularity_verdict(sub, ctx.modular)
    if v.quotient is None:
        out.write(f"{sub.name}: verdict {v.kind}, no quotient data\n")
        return 0 if v.kind == "Modular" else 5
    q = v.quotient
    out.write(f"{sub.name}: degenerate group of order {q.group_order}\n")
    for orbit, s in zip(q.orbits, q.stabilizers):
        out.write(f"orbit {{{' '.join(map(fmt, orbit))}}} stabilizer {s}\n")
    out.write(f"quotient simple objects: {q.quotient_count}\ntorus dimension: {q.torus_dimension}\n")
    return 0


def cmd_decompose(cfg: RunConfig, out: TextIO) -> int:
    ctx = _context(cfg)
    sub = _subset(ctx, cfg.subgroup)
    found = decompose_product(sub, ctx.modular, all=True)
    if not found:
        out.write(f"{sub.name}: no product decomposition\n")
        return 0
    for p in found if cfg.extra.get("all") else found[:1]:
        inter = " ".join(map(fmt, p.intersection))
        note = ", S factorizes" if p.s_factorization_checked else ""
        out.write(f"{sub.name} = {p.names[0]} x {p.names[1]} (intersection {{{inter}}}{note})\n")
    return 0


def cmd_moo(cfg: RunConfig, out: TextIO) -> int:
    ctx = _context(cfg)
    delta = delta_subset(ctx, ctx.rs.center.subgroup(cfg.subgroup))
    spec = GaussSumSpec.from_delta(delta, ctx.modular)
    out.write(f"N={spec.N} r=exp(2 pi i {spec.r_exponent})\n")
    path = cfg.extra.get("matrix")
    if path:
        L = LinkingMatrix.parse(Path(path).read_text())
        val = moo_invariant(L, spec)
        out.write(f"sigma={L.signature} value={_num(complex(val))}\n")
    count = cfg.extra.get("verify_kirby")
    if count:
        bad = kirby_invariance(spec, count, cfg.seed)
        out.write(f"kirby: {count - len(bad)}/{count} move sequences preserved the invariant\n")
        if bad:
            return 10
    return 0


def cmd_invariant(cfg: RunConfig, out: TextIO) -> int:
    ctx = _context(cfg)
    sub = _subset(ctx, cfg.subgroup)
    framings = cfg.extra["framings"]
    matrix = cfg.extra.get("matrix")
    if matrix:
        L = LinkingMatrix.parse(Path(matrix).read_text())
        if not L.is_diagonal:
            raise NonModularLabelSet(
                "non-diagonal presentations are only supported by the abelian invariant; use the moo command"
            )
        framings = list(L.framings)
    val = rt_invariant_diagonal(framings, sub, ctx.modular)
    out.write(f"{_num(complex(val))}\n")
    return 0


def cmd_accept(cfg: RunConfig, out: TextIO) -> int:
    from .acceptance import run_all

    failed = 0
    for r in run_all(cfg.extra.get("criteria") or None):
        out.write(r.line() + "\n")
        out.flush()
        failed += not r.passed
    return 1 if failed else 0


COMMANDS = {
    "alcove": cmd_alcove,
    "fusion": cmd_fusion,
    "smatrix": cmd_smatrix,
    "classify": cmd_classify,
    "dw-levels": cmd_dw_levels,
    "quotient": cmd_quotient,
    "decompose": cmd_decompose,
    "moo": cmd_moo,
    "invariant": cmd_invariant,
    "accept": cmd_accept,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="alcove",
        description="Fusion categories of quantum groups at roots of unity: modularity, quotients and invariants.",
        epilog=f"Set {CACHE_ENV} to a directory to persist weight diagrams between runs.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-labels", type=int, default=DEFAULT_MAX_LABELS, help="refuse larger label sets")
    common.add_argument("--force", action="store_true", help="override --max-labels")
    sub = p.add_subparsers(dest="command", required=True)

    def typed(name: str, help_: str, level: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_, parents=[common], description=help_)
        sp.add_argument("lie_type", help="Lie type such as A1, B2, G2, E8")
        if level:
            sp.add_argument("level", type=int, help="level k >= 1")
        return sp

    typed("alcove", "list the labels of the level-k alcove")
    typed("fusion", "print the fusion table as TSV lines 'lambda gamma eta N'")
    sp = typed("smatrix", "print the S-matrix")
    sp.add_argument("--numeric", action="store_true", help="complex values to 15 significant digits")
    sp.add_argument("--subset", help="full, gamma:<Z> or delta:<Z> (default full)")
    sp = typed("classify", "verdicts for every cyclic subgroup of the center")
    sp.add_argument("--json", action="store_true", help=f"emit the {SCHEMA_ID} JSON report")
    sp.add_argument("--all", action="store_true", help="list every product decomposition")
    sp = typed("dw-levels", "levels k <= K_MAX satisfying k(l(z), l(z))/2 in Z", level=False)
    sp.add_argument("subgroup", help="subgroup selector such as Z2 or Z2:3")
    sp.add_argument("k_max", type=int)
    sp = typed("quotient", "orbit and stabilizer data of the degenerate group")
    sp.add_argument("subset", nargs="?", default=None, help="subgroup selector or gamma:<Z>/delta:<Z>")
    sp = typed("decompose", "product decompositions Gamma_Z' x Delta_Z")
    sp.add_argument("subset", nargs="?", default=None, help="full (default), gamma:<Z> or delta:<Z>")
    sp.add_argument("--all", action="store_true", help="report every decomposition")
    sp = typed("moo", "the Gauss-sum invariant of a linking matrix for Delta_Z")
    sp.add_argument("subgroup", help="subgroup selector")
    sp.add_argument("matrix", nargs="?", help="linking-matrix file (n, then n rows)")
    sp.add_argument("--verify-kirby", type=int, metavar="COUNT", help="run COUNT random Kirby move sequences")
    sp.add_argument("--seed", type=int, default=0)
    sp = typed("invariant", "invariant of a disjoint union of framed unknots")
    sp.add_argument("framings", nargs="*", type=int, help="one framing per component")
    sp.add_argument("--subset", help="full (default), gamma:<Z> or delta:<Z>")
    sp.add_argument("--matrix", help="diagonal linking-matrix file instead of framings")
    sp = sub.add_parser("accept", help="run the acceptance suite")
    sp.add_argument("criteria", nargs="*", type=int, help="criterion numbers (default all)")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    cfg.lie_type = getattr(ns, "lie_type", None)
    cfg.level = getattr(ns, "level", None)
    cfg.max_labels = getattr(ns, "max_labels", DEFAULT_MAX_LABELS)
    cfg.force = getattr(ns, "force", False)
    cfg.numeric = getattr(ns, "numeric", False)
    cfg.seed = getattr(ns, "seed", 0)
    if getattr(ns, "json", False):
        cfg.output = "json"
    elif ns.command == "fusion":
        cfg.output = "tsv"
    cfg.subgroup = getattr(ns, "subgroup", None) or getattr(ns, "subset", None)
    for key in ("all", "k_max", "matrix", "verify_kirby", "framings", "criteria"):
        if hasattr(ns, key):
            cfg.extra[key] = getattr(ns, key)
    return cfg


def run(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    try:
        return COMMANDS[cfg.command](cfg, out)
    except AlcoveError as exc:
        print(f"alcove: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"alcove: error: {exc}", file=sys.stderr)
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
