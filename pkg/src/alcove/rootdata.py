"""Root systems of the simple Lie algebras in the fundamental-weight basis.

Weights are plain tuples of integers (Dynkin labels).  The inner product is
normalized so that long roots have squared length 2.  Node numbering follows
Bourbaki.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import FullCenterOfD2n, InadmissibleType, NonCyclicSubgroup

Weight = tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        fam, r = self.family, self.rank
        if fam in _MIN_RANK:
            if r < _MIN_RANK[fam]:
                raise InadmissibleType(f"{fam}{r}: rank must be >= {_MIN_RANK[fam]}")
        elif fam in _EXCEPTIONAL:
            if r not in _EXCEPTIONAL[fam]:
                raise InadmissibleType(f"{fam}{r}: rank must be one of {_EXCEPTIONAL[fam]}")
        else:
            raise InadmissibleType(f"unknown family {fam!r}")

    @classmethod
    def parse(cls, text: str) -> LieType:
        m = re.fullmatch(r"\s*([A-Ga-g])(\d+)\s*", text)
        if not m:
            raise InadmissibleType(f"cannot parse Lie type {text!r} (expected e.g. A1, B2, E8)")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _dynkin(lt: LieType) -> tuple[list[Fraction], list[tuple[int, int]]]:
    """Squared lengths of the simple roots and the edges of the diagram (0-based)."""
    r, fam = lt.rank, lt.family
    two, one = Fraction(2), Fraction(1)
    chain = [(i, i + 1) for i in range(r - 1)]
    if fam == "A":
        return [two] * r, chain
    if fam == "B":
        return [two] * (r - 1) + [one], chain
    if fam == "C":
        return [one] * (r - 1) + [two], chain
    if fam == "D":
        return [two] * r, [(i, i + 1) for i in range(r - 2)] + [(r - 3, r - 1)]
    if fam == "E":
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, r - 1)]
        return [two] * r, edges
    if fam == "F":
        return [two, two, one, one], chain
    return [Fraction(2, 3), two], chain  # G2: alpha_1 short


def _inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class CenterElement:
    """Element z of Z(G), identified with the fundamental weight l(z).

    ``node`` is the 0-based index i with l(z) = lambda_i, or None for the
    identity.
    """

    node: int | None

    def __str__(self) -> str:
        return "1" if self.node is None else f"l{self.node + 1}"


@dataclass(frozen=True)
class Subgroup:
    """A cyclic subgroup of the center, listed as powers of its generator."""

    elements: tuple[CenterElement, ...]
    generator: CenterElement

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, z: object) -> bool:
        return z in self.elements

    def issubset(self, other: Subgroup) -> bool:
        return set(self.elements) <= set(other.elements)

    @property
    def label(self) -> str:
        if self.order == 1:
            return "Z1"
        return f"Z{self.order}:{self.generator.node + 1}"


@dataclass(frozen=True)
class CenterGroup:
    rs: RootSystem = field(repr=False)
    elements: tuple[CenterElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> CenterElement:
        return self.elements[0]

    def ell(self, z: CenterElement) -> Weight:
        if z.node is None:
            return self.rs.zero
        return self.rs.fundamental(z.node)

    def multiply(self, a: CenterElement, b: CenterElement) -> CenterElement:
        target = tuple(x + y for x, y in zip(self.ell(a), self.ell(b)))
        for z in self.elements:
            if self.rs.in_root_lattice(tuple(x - y for x, y in zip(target, self.ell(z)))):
                return z
        raise AssertionError("center is not closed under the coset product")

    def power(self, z: CenterElement, n: int) -> CenterElement:
        out = self.identity
        for _ in range(n % self.order if self.order else 0):
            out = self.multiply(out, z)
        return out

    def element_order(self, z: CenterElement) -> int:
        n, w = 1, z
        while w != self.identity:
            w = self.multiply(w, z)
            n += 1
        return n

    def cyclic(self, z: CenterElement) -> Subgroup:
        elems = [self.identity]
        w = z
        while w != self.identity:
            elems.append(w)
            w = self.multiply(w, z)
        return Subgroup(tuple(elems), z)

    @property
    def generators(self) -> list[CenterElement]:
        """Minimal generating set (one element when the center is cyclic)."""
        gens: list[CenterElement] = []
        span = {self.identity}
        for z in sorted(self.elements[1:], key=lambda z: -self.element_order(z)):
            if z not in span:
                gens.append(z)
                span = self._closure(span | {z})
        return gens

    def _closure(self, s: set[CenterElement]) -> set[CenterElement]:
        out = set(s)
        while True:
            new = {self.multiply(a, b) for a in out for b in out} - out
            if not new:
                return out
            out |= new

    @property
    def is_cyclic(self) -> bool:
        return any(self.element_order(z) == self.order for z in self.elements)

    def cyclic_subgroups(self) -> list[Subgroup]:
        """Every cyclic subgroup, trivial first, ordered by size then generator."""
        seen: dict[frozenset, Subgroup] = {}
        for z in self.elements:
            sub = self.cyclic(z)
            key = frozenset(sub.elements)
            if key not in seen:
                seen[key] = sub
        return sorted(seen.values(), key=lambda s: (s.order, -1 if s.generator.node is None else s.generator.node))

    def subgroup(self, selector: str | int) -> Subgroup:
        """Resolve a selector such as ``2``, ``"Z2"`` or ``"Z2:3"``.

        The optional ``:i`` suffix names the fundamental weight lambda_i
        generating the subgroup, which disambiguates the three Z2's of D_{2n}.
        """
        text = str(selector).strip()
        m = re.fullmatch(r"[Zz]?(\d+)(?::(\d+))?", text)
        if not m:
            raise ValueError(f"cannot parse subgroup selector {selector!r}")
        n = int(m.group(1))
        node = int(m.group(2)) - 1 if m.group(2) else None
        if n == 0 or self.order % n:
            raise ValueError(f"{n} does not divide |Z(G)| = {self.order}")
        if n == self.order and not self.is_cyclic:
            raise FullCenterOfD2n(
                f"{self.rs.lie_type}: the full center Z2 x Z2 is not supported"
            )
        matches = [s for s in self.cyclic_subgroups() if s.order == n]
        if node is not None:
            matches = [s for s in matches if CenterElement(node) in s]
        if not matches:
            raise NonCyclicSubgroup(f"no cyclic subgroup of order {n} matches {selector!r}")
        if len(matches) > 1 and node is None:
            names = ", ".join(s.label for s in matches)
            raise ValueError(f"ambiguous subgroup {selector!r}; choose one of {names}")
        return matches[0]

    def subgroup_from_elements(self, elements: Iterable[CenterElement]) -> Subgroup:
        elems = self._closure(set(elements) | {self.identity})
        for z in elems:
            if self.element_order(z) == len(elems):
                return self.cyclic(z)
        if len(elems) == 4 and self.rs.lie_type.family == "D":
            raise FullCenterOfD2n(f"{self.rs.lie_type}: the full center Z2 x Z2 is not supported")
        raise NonCyclicSubgroup("subgroup is not cyclic")


@dataclass(frozen=True)
class RootSystem:
    lie_type: LieType
    cartan: tuple[tuple[int, ...], ...]
    root_gram: tuple[tuple[Fraction, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...]
    denom_scale: int
    positive_roots: tuple[Weight, ...]
    positive_roots_simple: tuple[Weight, ...]
    root_lengths: tuple[Fraction, ...]
    theta: Weight
    beta: Weight
    h: int

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def simple_roots(self) -> tuple[Weight, ...]:
        return self.cartan

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    def fundamental(self, i: int) -> Weight:
        return tuple(int(j == i) for j in range(self.rank))

    @property
    def simply_laced(self) -> bool:
        return self.lie_type.family in "ADE"

    def is_long(self, i: int) -> bool:
        return self.root_gram[i][i] == 2

    @cached_property
    def gram_scaled(self) -> np.ndarray:
        """L * gram as an integer matrix, L = ``denom_scale``."""
        return np.array([[int(x * self.denom_scale) for x in row] for row in self.gram], dtype=np.int64)

    @cached_property
    def comarks(self) -> Weight:
        """(lambda_i, theta) for each i; integers because theta is long."""
        return tuple(int(self.inner(self.fundamental(i), self.theta)) for i in range(self.rank))

    @cached_property
    def _cartan_inv(self) -> list[list[Fraction]]:
        return _inverse([[Fraction(x) for x in row] for row in self.cartan])

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        return inner_product(self, a, b)

    def inner_scaled(self, a: Sequence[int], b: Sequence[int]) -> int:
        g = self.gram_scaled
        r = self.rank
        return int(sum(a[i] * int(g[i, j]) * b[j] for i in range(r) for j in range(r) if a[i] and b[j]))

    def level_of(self, w: Sequence[int]) -> int:
        """(w, theta)."""
        return sum(x * c for x, c in zip(w, self.comarks))

    def to_simple_coords(self, w: Sequence[int]) -> tuple[Fraction, ...]:
        ci = self._cartan_inv
        return tuple(sum((w[i] * ci[i][j] for i in range(self.rank)), Fraction(0)) for j in range(self.rank))

    def in_root_lattice(self, w: Sequence[int]) -> bool:
        return all(x.denominator == 1 for x in self.to_simple_coords(w))

    def reflect(self, w: Sequence[int], i: int) -> Weight:
        c = w[i]
        if c == 0:
            return tuple(w)
        return tuple(x - c * a for x, a in zip(w, self.cartan[i]))

    def dominant_conjugate(self, w: Sequence[int]) -> Weight:
        w = tuple(w)
        while True:
            for i, c in enumerate(w):
                if c < 0:
                    w = self.reflect(w, i)
                    break
            else:
                return w

    def dual(self, w: Sequence[int]) -> Weight:
        """-w0(w), the highest weight of the dual representation."""
        return self.dominant_conjugate(tuple(-x for x in w))

    def weyl_orbit(self, w: Sequence[int]) -> list[Weight]:
        start = self.dominant_conjugate(w)
        orbit = [start]
        seen = {start}
        i = 0
        while i < len(orbit):
            v = orbit[i]
            i += 1
            for j, c in enumerate(v):
                if c > 0:
                    u = self.reflect(v, j)
                    if u not in seen:
                        seen.add(u)
                        orbit.append(u)
        return orbit

    @cached_property
    def _root_pairing(self) -> np.ndarray:
        """L (lambda_i, alpha) for each fundamental weight (rows) and positive root (columns)."""
        return self.gram_scaled @ np.array(self.positive_roots, dtype=np.int64).T

    @cached_property
    def _weyl_denominator(self) -> int:
        return math.prod(int(x) for x in np.ones(self.rank, dtype=np.int64) @ self._root_pairing)

    def weyl_dimension(self, lam: Sequence[int]) -> int:
        shifted = np.array(lam, dtype=np.int64) + 1
        num = math.prod(int(x) for x in shifted @ self._root_pairing)
        q, r = divmod(num, self._weyl_denominator)
        assert r == 0
        return q

    @cached_property
    def center(self) -> CenterGroup:
        return center_group(self)


def inner_product(rs: RootSystem, a: Sequence[int], b: Sequence[int]) -> Fraction:
    """The invariant form on weights, long roots of squared length 2."""
    if len(a) != rs.rank or len(b) != rs.rank:
        raise ValueError("weight rank does not match the root system")
    g = rs.gram
    return sum((a[i] * g[i][j] * b[j] for i in range(rs.rank) for j in range(rs.rank) if a[i] and b[j]),
               Fraction(0))


@lru_cache(maxsize=None)
def _build(lt: LieType) -> RootSystem:
    lengths, edges = _dynkin(lt)
    r = lt.rank
    B = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        B[i][i] = lengths[i]
    for i, j in edges:
        B[i][j] = B[j][i] = -max(lengths[i], lengths[j]) / 2
    cartan = tuple(tuple(int(2 * B[i][j] / B[j][j]) for j in range(r)) for i in range(r))
    binv = _inverse(B)
    D = [lengths[i] / 2 for i in range(r)]
    gram = tuple(tuple(D[i] * binv[i][j] * D[j] for j in range(r)) for i in range(r))
    scale = 1
    for row in gram:
        for x in row:
            scale = math.lcm(scale, x.denominator)

    def labels(simple: Weight) -> Weight:
        return tuple(sum(simple[i] * cartan[i][j] for i in range(r)) for j in range(r))

    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots: list[Weight] = list(simple)
    seen = set(roots)
    idx = 0
    while idx < len(roots):
        rt = roots[idx]
        idx += 1
        lab = labels(rt)
        for i in range(r):
            if lab[i] == 0:
                continue
            new = tuple(x - lab[i] * int(j == i) for j, x in enumerate(rt))
            if all(x >= 0 for x in new) and any(new) and new not in seen:
                seen.add(new)
                roots.append(new)
    roots.sort(key=lambda s: (sum(s), s))

    def length(s: Weight) -> Fraction:
        return sum((s[i] * B[i][j] * s[j] for i in range(r) for j in range(r)), Fraction(0))

    lens = tuple(length(s) for s in roots)
    weights = tuple(labels(s) for s in roots)
    theta_candidates = [w for w, ln in zip(weights, lens) if ln == 2 and all(x >= 0 for x in w)]
    short = [w for w, ln in zip(weights, lens) if ln < 2 and all(x >= 0 for x in w)]
    assert len(theta_candidates) == 1, "highest root must be unique"
    theta = theta_candidates[0]
    if short:
        assert len(short) == 1, "highest short root must be unique"
        beta = short[0]
    else:
        beta = theta
    rs = RootSystem(
        lie_type=lt,
        cartan=cartan,
        root_gram=tuple(tuple(row) for row in B),
        gram=gram,
        denom_scale=scale,
        positive_roots=weights,
        positive_roots_simple=tuple(roots),
        root_lengths=lens,
        theta=theta,
        beta=beta,
        h=0,
    )
    h = rs.inner(rs.rho, theta) + 1
    assert h.denominator == 1
    object.__setattr__(rs, "h", int(h))
    return rs


def build_root_system(lie_type: LieType | str) -> RootSystem:
    if isinstance(lie_type, str):
        lie_type = LieType.parse(lie_type)
    return _build(lie_type)


def center_group(rs: RootSystem) -> CenterGroup:
    """Z(G) realized on {0} and the fundamental weights with alpha_i long and (lambda_i, theta) = 1."""
    nodes = [i for i in range(rs.rank) if rs.is_long(i) and rs.comarks[i] == 1]
    return CenterGroup(rs, (CenterElement(None),) + tuple(CenterElement(i) for i in nodes))


def center_character(rs: RootSystem, z: CenterElement, gamma: Sequence[int]) -> Fraction:
    """(gamma, l(z)) mod 1: z acts on V_gamma by exp(2 pi i * this)."""
    if z.node is None:
        return Fraction(0)
    x = rs.inner(gamma, rs.fundamental(z.node))
    return x - math.floor(x)
