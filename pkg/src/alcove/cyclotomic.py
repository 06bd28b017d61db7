"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(M)-1) with
integer coefficients and a positive common denominator.  Products are
formed as dense vectors modulo x^M - 1 and then mapped to the power basis by
a precomputed reduction matrix, so every equality test is a comparison of
canonical forms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np
import sympy
from sympy.ntheory import isprime, primitive_root

_INT64_SAFE = 2**62


class CycloField:
    """Reduction data for Q(zeta_M)."""

    def __init__(self, order: int) -> None:
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        x = sympy.Symbol("x")
        # ascending coefficients of the monic M-th cyclotomic polynomial
        poly = sympy.Poly(sympy.cyclotomic_poly(order, x), x).all_coeffs()[::-1]
        self.phi_poly = [int(c) for c in poly]
        self.degree = len(self.phi_poly) - 1

    def __repr__(self) -> str:
        return f"CycloField({self.order})"

    @cached_property
    def reduction(self) -> np.ndarray:
        """Row j holds the power-basis coefficients of x^j mod Phi_M, 0 <= j < M."""
        d = self.degree
        rows = []
        cur = [0] * d
        for j in range(self.order):
            if j < d:
                cur = [int(i == j) for i in range(d)]
            else:
                top = cur[-1]
                cur = [0] + cur[:-1]
                cur = [c - top * p for c, p in zip(cur, self.phi_poly[:d])]
            rows.append(cur)
        arr = np.array(rows, dtype=object)
        if max((abs(int(v)) for v in arr.flat), default=0) < 2**31:
            return arr.astype(np.int64)
        return arr

    @cached_property
    def _red_bound(self) -> int:
        return int(np.abs(self.reduction).max()) if self.reduction.size else 0

    def reduce_dense(self, vec: np.ndarray) -> tuple[int, ...]:
        """Power-basis coefficients of sum_j vec[j] x^j, vec of length M."""
        red = self.reduction
        if vec.dtype != object and red.dtype != object:
            bound = int(np.abs(vec).sum()) * self._red_bound
            if bound < _INT64_SAFE:
                return tuple(int(c) for c in vec @ red)
        v = np.asarray(vec, dtype=object)
        return tuple(int(c) for c in v.dot(red.astype(object)))

    def zero(self) -> CycloValue:
        return CycloValue(self.order, (0,) * self.degree)

    def one(self) -> CycloValue:
        return self.integer(1)

    def integer(self, n: int) -> CycloValue:
        return CycloValue(self.order, (int(n),) + (0,) * (self.degree - 1))

    def zeta(self, e: int) -> CycloValue:
        """zeta_M^e."""
        return CycloValue(self.order, tuple(int(c) for c in self.reduction[e % self.order]))

    def from_dense(self, vec: Sequence[int] | np.ndarray, den: int = 1) -> CycloValue:
        arr = np.asarray(vec)
        if arr.dtype != object:
            arr = arr.astype(np.int64)
        return CycloValue(self.order, self.reduce_dense(arr), den)


@lru_cache(maxsize=None)
def cyclo_field(order: int) -> CycloField:
    return CycloField(order)


def _normalize(coeffs: tuple[int, ...], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        coeffs, den = tuple(-c for c in coeffs), -den
    if den != 1:
        g = math.gcd(den, *coeffs)
        if g > 1:
            coeffs, den = tuple(c // g for c in coeffs), den // g
    return coeffs, den


@dataclass(frozen=True, eq=False)
class CycloValue:
    """An element of Q(zeta_order) in canonical form."""

    order: int
    coeffs: tuple[int, ...]
    den: int = 1

    def __post_init__(self) -> None:
        if self.den == 0:
            raise ZeroDivisionError("zero denominator")
        coeffs, den = _normalize(tuple(int(c) for c in self.coeffs), int(self.den))
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "den", den)

    @property
    def field(self) -> CycloField:
        return cyclo_field(self.order)

    def dense(self) -> np.ndarray:
        """Numerators as a length-M vector indexed by exponent."""
        out = np.zeros(self.order, dtype=object if _big(self.coeffs) else np.int64)
        out[: len(self.coeffs)] = self.coeffs
        return out

    def promote(self, order: int) -> CycloValue:
        """The same number viewed in Q(zeta_order), order a multiple of self.order."""
        if order == self.order:
            return self
        step, rem = divmod(order, self.order)
        if rem:
            raise ValueError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        vec = np.zeros(order, dtype=object if _big(self.coeffs) else np.int64)
        vec[: step * len(self.coeffs) : step] = self.coeffs
        return cyclo_field(order).from_dense(vec, self.den)

    def _align(self, other: object) -> tuple[CycloValue, CycloValue]:
        if isinstance(other, int):
            other = cyclo_field(self.order).integer(other)
        if not isinstance(other, CycloValue):
            return NotImplemented  # type: ignore[return-value]
        if other.order == self.order:
            return self, other
        m = math.lcm(self.order, other.order)
        return self.promote(m), other.promote(m)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        pair = self._align(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs and a.den == b.den

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs, self.den))

    def __add__(self, other: object) -> CycloValue:
        pair = self._align(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        den = a.den * b.den // math.gcd(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return CycloValue(a.order, tuple(x * fa + y * fb for x, y in zip(a.coeffs, b.coeffs)), den)

    __radd__ = __add__

    def __neg__(self) -> CycloValue:
        return CycloValue(self.order, tuple(-c for c in self.coeffs), self.den)

    def __sub__(self, other: object) -> CycloValue:
        pair = self._align(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other: object) -> CycloValue:
        return (-self) + other

    def __mul__(self, other: object) -> CycloValue:
        if isinstance(other, int):
            return CycloValue(self.order, tuple(c * other for c in self.coeffs), self.den)
        pair = self._align(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        m = a.order
        big = _big(a.coeffs) or _big(b.coeffs)
        if not big:
            bound = max(map(abs, a.coeffs), default=0) * max(map(abs, b.coeffs), default=0) * len(a.coeffs)
            big = bound >= _INT64_SAFE
        dtype = object if big else np.int64
        prod = np.convolve(np.array(a.coeffs, dtype=dtype), np.array(b.coeffs, dtype=dtype))
        vec = np.zeros(m, dtype=dtype)
        n = len(prod)
        vec[: min(n, m)] += prod[:m]
        if n > m:
            vec[: n - m] += prod[m:]
        return cyclo_field(m).from_dense(vec, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> CycloValue:
        if isinstance(other, int):
            return CycloValue(self.order, self.coeffs, self.den * other)
        if isinstance(other, CycloValue):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, n: int) -> CycloValue:
        if n < 0:
            return self.inverse() ** (-n)
        result = cyclo_field(self.order).one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def galois(self, j: int) -> CycloValue:
        """The automorphism zeta -> zeta^j, gcd(j, M) = 1."""
        m = self.order
        vec = np.zeros(m, dtype=object if _big(self.coeffs) else np.int64)
        for i, c in enumerate(self.coeffs):
            vec[(i * j) % m] += c
        return cyclo_field(m).from_dense(vec, self.den)

    def conj(self) -> CycloValue:
        """Complex conjugation, zeta -> zeta^(-1)."""
        return self.galois(-1)

    def monomial(self) -> int | None:
        """e if self == zeta^e, else None."""
        if self.den != 1:
            return None
        f = self.field
        for e in range(self.order):
            if f.zeta(e).coeffs == self.coeffs:
                return e
        return None

    def inverse(self) -> CycloValue:
        """1/self as the product of the other Galois conjugates over the norm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            c = self.coeffs[0]
            return CycloValue(self.order, (self.den,) + (0,) * (len(self.coeffs) - 1), c)
        m = self.order
        others = cyclo_field(m).one()
        for j in range(2, m):
            if math.gcd(j, m) == 1:
                others = others * self.galois(j)
        norm = (self * others).rational()
        return others * norm.denominator / norm.numerator

    def __complex__(self) -> complex:
        m = self.order
        return sum(c * cmath.exp(2j * math.pi * k / m) for k, c in enumerate(self.coeffs)) / self.den

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0], self.den)

    def embed_mod(self, p: int, omega: int) -> int:
        """Image under zeta -> omega in F_p (den must be invertible mod p)."""
        acc = 0
        w = 1
        for c in self.coeffs:
            if c:
                acc += c * w
            w = w * omega % p
        return acc * pow(self.den, -1, p) % p

    def l1(self) -> int:
        """Upper bound for |sigma(self)| * den over every complex embedding."""
        return sum(abs(c) for c in self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*z^{j}" if j else str(c) for j, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"<Q(zeta_{self.order}): {body}>"

    def exact_pairs(self) -> list[tuple[int, int]]:
        """Nonzero (exponent, coefficient) pairs of the numerator."""
        return [(j, c) for j, c in enumerate(self.coeffs) if c]


def _big(coeffs: Iterable[int]) -> bool:
    return any(abs(c) >= 2**40 for c in coeffs)


def divide_by_xc_minus_1(poly: np.ndarray, c: int) -> np.ndarray:
    """Exact quotient poly / (x^c - 1) for ascending coefficients; raises if inexact."""
    n = len(poly)
    q = np.zeros(n, dtype=poly.dtype)
    # poly_j = q_{j-c} - q_j  =>  q_j = q_{j-c} - poly_j
    for r in range(c):
        col = -poly[r::c]
        q[r::c] = np.cumsum(col) if poly.dtype != object else _cumsum_obj(col)
    if any(q[n - c :]):
        raise ArithmeticError("polynomial not divisible by x^c - 1")
    return q[: n - c]


def _cumsum_obj(a: np.ndarray) -> np.ndarray:
    out = np.empty(len(a), dtype=object)
    s = 0
    for i, v in enumerate(a):
        s += v
        out[i] = s
    return out


def multiply_by_xc_minus_1(poly: np.ndarray, c: int) -> np.ndarray:
    out = np.zeros(len(poly) + c, dtype=poly.dtype)
    out[c:] += poly
    out[:-c] -= poly
    return out


# --- exact determinants -------------------------------------------------------


def _primes_one_mod(m: int, start: int = 2**30) -> Iterable[int]:
    p = start - (start % m) + 1
    while True:
        if p < 2**31 and isprime(p):
            yield p
        p += m
        if p >= 2**31:
            raise RuntimeError("ran out of word-size primes")


def _det_mod(mat: list[list[int]], p: int) -> int:
    a = np.array(mat, dtype=np.int64) % p
    n = a.shape[0]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r, col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            det = -det
        det = det * int(a[col, col]) % p
        inv = pow(int(a[col, col]), -1, p)
        below = a[col + 1 :, col].copy()
        if below.any():
            factors = below * inv % p
            # entries < 2^31, so each product fits in int64
            a[col + 1 :] = (a[col + 1 :] - (factors[:, None] * a[col]) % p) % p
    return det % p


def _embed(reduced: np.ndarray, w: int, p: int) -> np.ndarray:
    """Apply zeta -> w entrywise to an (n, n, phi) array of coefficients mod p."""
    acc = np.zeros(reduced.shape[:2], dtype=np.int64)
    power = 1
    for j in range(reduced.shape[2]):
        acc = (acc + reduced[:, :, j] * power) % p
        power = power * w % p
    return acc


def determinant_is_zero(matrix: Sequence[Sequence[CycloValue]]) -> bool:
    """Exact test det(matrix) == 0 over Q(zeta).

    Nonvanishing modulo one prime ideal proves det != 0.  Vanishing at every
    embedding modulo primes whose product exceeds a bound on every complex
    conjugate of det proves det == 0 (the norm of a nonzero algebraic integer
    is a nonzero integer).
    """
    n = len(matrix)
    if n == 0:
        return False
    m = math.lcm(*(v.order for row in matrix for v in row))
    rows = [[v.promote(m) for v in row] for row in matrix]
    # clear denominators row by row
    scaled: list[list[CycloValue]] = []
    for row in rows:
        d = math.lcm(*(v.den for v in row))
        scaled.append([CycloValue(m, v.coeffs, 1) * (d // v.den) for v in row])
    bound = 1
    for row in scaled:
        bound *= max(1, sum(v.l1() for v in row))
    units = [j for j in range(1, m + 1) if math.gcd(j, m) == 1] if m > 1 else [1]
    product = 1
    coeffs = np.array([[v.coeffs for v in row] for row in scaled], dtype=object)
    for p in _primes_one_mod(m):
        reduced = (coeffs % p).astype(np.int64)
        g = primitive_root(p)
        omega = pow(g, (p - 1) // m, p)
        for j in units:
            if _det_mod(_embed(reduced, pow(omega, j, p), p), p):
                return False
        product *= p
        if product > bound:
            return True
    raise AssertionError("unreachable")  # pragma: no cover


def is_invertible_matrix(matrix: Sequence[Sequence[CycloValue]]) -> bool:
    return not determinant_is_zero(matrix)
