"""Twists, quantum dimensions and the S-matrix of a level-k alcove, exactly.

Everything lives in Q(zeta_M) with M = 2 L (k + h), where L clears the
denominators of the weight inner product.  Then q = zeta^(2L), every twist
q^((lam, lam + 2 rho)/2) is zeta^(L (lam, lam + 2 rho)), and every central
character e^(2 pi i (l, gamma)) is zeta^(M (l, gamma)).
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from .cyclotomic import (
    CycloValue,
    cyclo_field,
    determinant_is_zero,
    divide_by_xc_minus_1,
    multiply_by_xc_minus_1,
)
from .fusion import AlcoveContext, FusionTable
from .multiplicity import weight_diagram
from .rootdata import Weight

# past this many positive roots the q-dimension product is formed with Python ints
_OBJECT_ROOTS = 24


class ModularData:
    """Exact twists, quantum dimensions and S-matrix entries over an alcove."""

    def __init__(self, table: FusionTable) -> None:
        self.table = table
        self.ctx: AlcoveContext = table.ctx
        rs = self.ctx.rs
        self.order = 2 * rs.denom_scale * self.ctx.kh
        self.field = cyclo_field(self.order)
        self._qdim: dict[Weight, CycloValue] = {}
        self._s: dict[tuple[Weight, Weight], CycloValue] = {}

    def __repr__(self) -> str:
        return f"ModularData({self.ctx.rs.lie_type}, k={self.ctx.level}, M={self.order})"

    # -- twists -------------------------------------------------------------

    def twist_exponent(self, lam: Weight) -> int:
        """e with C_lam = zeta_M^e."""
        rs = self.ctx.rs
        two_rho = tuple(2 for _ in lam)
        return rs.inner_scaled(lam, tuple(a + b for a, b in zip(lam, two_rho))) % self.order

    def twist(self, lam: Weight) -> CycloValue:
        return self.field.zeta(self.twist_exponent(lam))

    # -- quantum dimensions -------------------------------------------------

    def qdim(self, lam: Weight) -> CycloValue:
        hit = self._qdim.get(lam)
        if hit is None:
            hit = self._qdim[lam] = self._qdim_product(lam)
        return hit

    def _qdim_product(self, lam: Weight) -> CycloValue:
        """Quantum Weyl dimension prod_a [(lam + rho, a)] / [(rho, a)] in Q(zeta_M)."""
        rs = self.ctx.rs
        lam_rho = tuple(x + 1 for x in lam)
        tops = [2 * rs.inner_scaled(lam_rho, a) for a in rs.positive_roots]
        bots = [2 * rs.inner_scaled(rs.rho, a) for a in rs.positive_roots]
        dtype = object if len(tops) > _OBJECT_ROOTS else np.int64
        poly = np.ones(1, dtype=dtype)
        for c in tops:
            poly = multiply_by_xc_minus_1(poly, c)
        for c in bots:
            poly = divide_by_xc_minus_1(poly, c)
        if int(poly.sum()) != rs.weyl_dimension(lam) or (poly < 0).any():
            raise ArithmeticError(f"q-dimension polynomial of {lam} failed its integrity check")
        shift = (sum(tops) - sum(bots)) // 2
        return self._laurent_to_field(poly, -shift)

    def qdim_character(self, lam: Weight) -> CycloValue:
        """qdim via the principal specialization of the weight diagram (slow oracle)."""
        rs = self.ctx.rs
        vec = np.zeros(self.order, dtype=np.int64)
        for mu, m in weight_diagram(rs, lam).entries.items():
            vec[(2 * rs.inner_scaled(mu, rs.rho)) % self.order] += m
        return self.field.from_dense(vec)

    def _laurent_to_field(self, poly: np.ndarray, offset: int) -> CycloValue:
        idx = (np.arange(len(poly)) + offset) % self.order
        vec = np.zeros(self.order, dtype=poly.dtype)
        np.add.at(vec, idx, poly)
        return self.field.from_dense(vec)

    # -- S-matrix -----------------------------------------------------------

    def s_entry(self, lam: Weight, gamma: Weight) -> CycloValue:
        """S_{lam,gamma} = sum_eta N_{lam,gamma}^eta qdim(eta) C_eta / (C_lam C_gamma)."""
        key = (lam, gamma) if lam <= gamma else (gamma, lam)
        hit = self._s.get(key)
        if hit is not None:
            return hit
        row = self.table.row(lam, gamma)
        base = self.twist_exponent(lam) + self.twist_exponent(gamma)
        acc = None
        for eta, n in row.items():
            d = self.qdim(eta).dense() * n
            shifted = np.roll(d, self.twist_exponent(eta) - base)
            acc = shifted if acc is None else acc + shifted
        assert acc is not None
        val = self._s[key] = self.field.from_dense(acc)
        return val

    def prefetch(self, pairs) -> None:
        self.table.prefetch(pairs)

    def smatrix(self, labels: Sequence[Weight] | None = None) -> list[list[CycloValue]]:
        labels = list(self.ctx.labels if labels is None else labels)
        self.prefetch((a, b) for i, a in enumerate(labels) for b in labels[i:])
        return [[self.s_entry(a, b) for b in labels] for a in labels]

    def smatrix_numeric(self, labels: Sequence[Weight] | None = None) -> np.ndarray:
        return np.array([[complex(v) for v in row] for row in self.smatrix(labels)])

    def is_modular(self, labels: Sequence[Weight] | None = None) -> bool:
        """Exact det S != 0 on the given labels."""
        return not determinant_is_zero(self.smatrix(labels))

    # -- central characters -------------------------------------------------

    def character(self, ell: Weight, gamma: Weight) -> CycloValue:
        """e^(2 pi i (ell, gamma)) as a root of unity in Q(zeta_M)."""
        e = self.ctx.kh * 2 * self.ctx.rs.inner_scaled(ell, gamma)
        return self.field.zeta(e)

    @cached_property
    def qdim_numeric(self) -> dict[Weight, float]:
        return {lam: complex(self.qdim(lam)).real for lam in self.ctx.labels}


def modular_data(ctx: AlcoveContext) -> ModularData:
    return ctx.modular


def twist(ctx: AlcoveContext, lam: Weight) -> CycloValue:
    return ctx.modular.twist(tuple(lam))


def qdim(ctx: AlcoveContext, lam: Weight) -> CycloValue:
    return ctx.modular.qdim(tuple(lam))


def smatrix(ctx: AlcoveContext, labels: Sequence[Weight] | None = None) -> list[list[CycloValue]]:
    return ctx.modular.smatrix(labels)

