"""Roots of unity as elements of Q/Z and exact cyclotomic integers.

A root of unity exp(2 pi i a/n) is stored as the fraction a/n mod 1.  Sums of
roots of unity are integer vectors over Z/nZ reduced modulo the cyclotomic
polynomial Phi_n, which gives a canonical form (equality is exact).
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

# -- Q/Z ------------------------------------------------------------------


def root(a, n=1) -> Fraction:
    """The element a/n of Q/Z, reduced to [0, 1)."""
    return Fraction(a, n) % 1


def root_add(x, y) -> Fraction:
    return (Fraction(x) + Fraction(y)) % 1


def root_neg(x) -> Fraction:
    return (-Fraction(x)) % 1


def root_pow(x, k) -> Fraction:
    return (Fraction(x) * k) % 1


def root_order(x) -> int:
    return Fraction(x).denominator


def to_residue(x, n) -> int:
    """x in (1/n)Z/Z as an integer mod n."""
    x = Fraction(x) * n
    if x.denominator != 1:
        raise ValueError(f"{x / n} does not lie in (1/{n})Z/Z")
    return int(x) % n


# -- cyclotomic polynomials ----------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, cyclotomic_poly(d))
    return tuple(num)


def _exact_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]  # den is monic
        out[k] = c
        if c:
            for i, a in enumerate(den):
                num[k + i] -= c * a
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def reduce_rows(arr, n):
    """Reduce rows of exponent-count vectors (length >= n) modulo Phi_n.

    Column k of ``arr`` is the coefficient of zeta_n^k; the result has
    phi(n) columns and is the canonical form.
    """
    arr = np.array(arr, dtype=np.int64)
    if arr.shape[-1] != n:
        raise ValueError("rows must have one entry per power of zeta")
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    low = np.array(phi[:-1], dtype=np.int64)
    for k in range(n - 1, deg - 1, -1):
        c = arr[..., k]
        if c.any():
            arr[..., k - deg:k] -= c[..., None] * low
        arr[..., k] = 0
    return arr[..., :deg]


class CycInt:
    """An element sum_k c_k zeta_n^k of Z[zeta_n] in canonical form."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, counts):
        counts = list(counts)
        if len(counts) < n:
            counts = counts + [0] * (n - len(counts))
        self.n = n
        self.coeffs = tuple(int(c) for c in reduce_rows(np.array(counts[:n]), n))

    @classmethod
    def from_exponents(cls, n, exps):
        counts = [0] * n
        for e in exps:
            counts[int(e) % n] += 1
        return cls(n, counts)

    @classmethod
    def integer(cls, k, n=1):
        return cls(n, [k])

    def counts(self):
        return list(self.coeffs) + [0] * (self.n - len(self.coeffs))

    def embed(self, n2):
        if n2 % self.n:
            raise ValueError("can only embed into a multiple of the level")
        f = n2 // self.n
        counts = [0] * n2
        for k, c in enumerate(self.coeffs):
            counts[k * f] = c
        return CycInt(n2, counts)

    def _common(self, other):
        if not isinstance(other, CycInt):
            other = CycInt.integer(other)
        n = math.lcm(self.n, other.n)
        return self.embed(n), other.embed(n), n

    def __add__(self, other):
        a, b, n = self._common(other)
        return CycInt(n, [x + y for x, y in zip(a.counts(), b.counts())])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.n, [-c for c in self.counts()])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b, n = self._common(other)
        out = [0] * n
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[(i + j) % n] += x * y
        return CycInt(n, out)

    __rmul__ = __mul__

    def conj(self):
        out = [0] * self.n
        for k, c in enumerate(self.coeffs):
            out[(-k) % self.n] += c
        return CycInt(self.n, out)

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, (CycInt, int)):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        # hash the value at the smallest level it lives in is awkward; use a numeric key
        z = self.to_complex()
        return hash((round(z.real, 6), round(z.imag, 6)))

    def to_complex(self):
        return sum(c * cmath.exp(2j * math.pi * k / self.n) for k, c in enumerate(self.coeffs))

    def rational_value(self):
        """The value as a Fraction if it is rational, else None."""
        if any(self.coeffs[1:]):
            return None
        return Fraction(self.coeffs[0]) if self.coeffs else Fraction(0)

    def __repr__(self):
        terms = [f"{c}*z{self.n}^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        return "CycInt(" + (" + ".join(terms) or "0") + ")"


# -- class functions as exponent-count tables ----------------------------


def inner_product(f, g, order, n):
    """(1/order) sum_x f(x) conj(g(x)) for tables of exponent counts.

    ``f`` and ``g`` have shape (#elements, n): entry [x, k] counts zeta_n^k in
    the value at x.  The result is an exact Fraction; a non-rational result
    means the inputs are not class functions of the expected kind.
    """
    f = np.asarray(f, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    corr = np.zeros(n, dtype=np.int64)
    for k in range(n):
        # coefficient of zeta^k in sum f(x) conj(g(x)): pairs a - b = k
        corr[k] = int(np.sum(f * np.roll(g, k, axis=1)))
    red = reduce_rows(corr, n)
    if red[1:].any():
        raise ValueError("inner product is not rational")
    val = Fraction(int(red[0]), order) if len(red) else Fraction(0)
    return val


def tables_equal(f, g, n):
    diff = np.asarray(f, dtype=np.int64) - np.asarray(g, dtype=np.int64)
    return not reduce_rows(diff, n).any()


def canonical_table(f, n):
    return reduce_rows(f, n)


def exp_table(exps, n):
    """Count table for a function whose values are single roots zeta_n^e
    (e = -1 marks the value 0)."""
    exps = np.asarray(exps, dtype=np.int64)
    out = np.zeros((len(exps), n), dtype=np.int64)
    ok = exps >= 0
    out[np.flatnonzero(ok), exps[ok] % n] = 1
    return out
