"""Classical weight multiplicities via Freudenthal's recursion.

Diagrams are memoized per (Lie type, highest weight) and stored by dominant
representative; the full weight list is expanded by Weyl orbits on demand.
Set ``ALCOVE_CACHE_DIR`` to persist dominant multiplicities between runs.
"""

from __future__ import annotations

import os
import struct
import threading
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import NonDominantWeight
from .rootdata import RootSystem, Weight

CACHE_ENV = "ALCOVE_CACHE_DIR"
_MAGIC = b"ALCWD"
_VERSION = 1


@dataclass(frozen=True)
class WeightDiagram:
    rs: RootSystem = field(repr=False)
    highest: Weight
    dominant: dict[Weight, int]

    @cached_property
    def entries(self) -> dict[Weight, int]:
        out: dict[Weight, int] = {}
        for mu, m in self.dominant.items():
            for w in self.rs.weyl_orbit(mu):
                out[w] = m
        return out

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(weights, multiplicities) as int64 arrays, in a fixed order."""
        items = sorted(self.entries.items())
        w = np.array([k for k, _ in items], dtype=np.int64).reshape(len(items), self.rs.rank)
        m = np.array([v for _, v in items], dtype=np.int64)
        return w, m

    def __getitem__(self, mu: Sequence[int]) -> int:
        return self.dominant.get(self.rs.dominant_conjugate(mu), 0)

    @property
    def dimension(self) -> int:
        return sum(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)


def dominant_weights(rs: RootSystem, lam: Weight) -> list[Weight]:
    """Dominant weights below lam, found by subtracting positive roots.

    Covering relations in the dominance order on dominant weights are
    positive roots, so this search reaches all of them.
    """
    out = [lam]
    seen = {lam}
    i = 0
    while i < len(out):
        mu = out[i]
        i += 1
        for a in rs.positive_roots:
            nu = tuple(x - y for x, y in zip(mu, a))
            if nu not in seen and all(x >= 0 for x in nu):
                seen.add(nu)
                out.append(nu)
    return out


def _freudenthal(rs: RootSystem, lam: Weight) -> dict[Weight, int]:
    doms = dominant_weights(rs, lam)
    # process from the top: depth = height of lam - mu in simple-root coordinates
    depth = {mu: sum(rs.to_simple_coords(tuple(x - y for x, y in zip(lam, mu)))) for mu in doms}
    doms.sort(key=lambda mu: depth[mu])
    ip = rs.inner_scaled
    lam_rho = tuple(x + 1 for x in lam)
    top = ip(lam_rho, lam_rho)
    mult: dict[Weight, int] = {lam: 1}
    dom_of: dict[Weight, Weight] = {}

    def m_of(nu: Weight) -> int:
        d = dom_of.get(nu)
        if d is None:
            d = dom_of[nu] = rs.dominant_conjugate(nu)
        return mult.get(d, 0)

    for mu in doms[1:]:
        mu_rho = tuple(x + 1 for x in mu)
        denom = top - ip(mu_rho, mu_rho)
        total = 0
        for a in rs.positive_roots:
            nu = mu
            while True:
                nu = tuple(x + y for x, y in zip(nu, a))
                m = m_of(nu)
                if m == 0:
                    break
                total += m * ip(nu, a)
        q, r = divmod(2 * total, denom)
        assert r == 0, "Freudenthal recursion produced a non-integer"
        mult[mu] = q
    return {mu: m for mu, m in mult.items() if m}


class _DiagramCache:
    """Thread-safe memo: lock-free reads, exclusive insertion."""

    def __init__(self) -> None:
        self._data: dict[tuple[str, Weight], WeightDiagram] = {}
        self._lock = threading.Lock()

    def get(self, rs: RootSystem, lam: Weight) -> WeightDiagram:
        key = (str(rs.lie_type), lam)
        hit = self._data.get(key)
        if hit is not None:
            return hit
        dominant = _load(rs, lam)
        if dominant is None:
            dominant = _freudenthal(rs, lam)
            _store(rs, lam, dominant)
        diag = WeightDiagram(rs, lam, dominant)
        with self._lock:
            return self._data.setdefault(key, diag)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


_CACHE = _DiagramCache()


def _cache_path(rs: RootSystem, lam: Weight) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / str(rs.lie_type) / ("_".join(map(str, lam)) + ".wdg")


def _load(rs: RootSystem, lam: Weight) -> dict[Weight, int] | None:
    path = _cache_path(rs, lam)
    if path is None or not path.exists():
        return None
    data = path.read_bytes()
    head = struct.Struct("<5sBHI")
    if len(data) < head.size:
        return None
    magic, version, rank, count = head.unpack_from(data)
    if magic != _MAGIC or version != _VERSION or rank != rs.rank:
        return None
    rec = struct.Struct(f"<{rank}iQ")
    if len(data) != head.size + count * rec.size:
        return None
    out = {}
    for k in range(count):
        *w, m = rec.unpack_from(data, head.size + k * rec.size)
        out[tuple(w)] = m
    return out if out.get(lam) == 1 else None


def _store(rs: RootSystem, lam: Weight, dominant: dict[Weight, int]) -> None:
    path = _cache_path(rs, lam)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    rec = struct.Struct(f"<{rs.rank}iQ")
    body = b"".join(rec.pack(*w, m) for w, m in sorted(dominant.items()))
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    tmp.write_bytes(struct.pack("<5sBHI", _MAGIC, _VERSION, rs.rank, len(dominant)) + body)
    tmp.replace(path)


def weight_diagram(rs: RootSystem, lam: Sequence[int]) -> WeightDiagram:
    lam = tuple(lam)
    if len(lam) != rs.rank or any(x < 0 for x in lam):
        raise NonDominantWeight(f"{lam} is not a dominant weight of {rs.lie_type}")
    return _CACHE.get(rs, lam)


def weight_multiplicity(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> int:
    """Dimension of the mu weight space of the irreducible module V(lam)."""
    return weight_diagram(rs, lam)[tuple(mu)]
