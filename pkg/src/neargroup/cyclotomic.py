"""Exact arithmetic in Z[ζ_N].

Elements are stored in the power basis ``1, ζ, ..., ζ^{φ(N)-1}`` after
reduction modulo the N-th cyclotomic polynomial, so equality is equality of
coefficient vectors.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

import numpy as np

DEFAULT_N = 36


def _polydivmod(num, den):
    """Exact division of integer polynomials (coefficients low to high, ``den`` monic)."""
    num = list(num)
    dq = len(den) - 1
    if len(num) <= dq:
        return [0], num
    q = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            q[i - dq] = c
            for j, d in enumerate(den):
                num[i - dq + j] -= c * d
    return q, num[:dq]


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Φ_n as integer coefficients, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _polymul(den, cyclotomic_polynomial(d))
    q, r = _polydivmod(num, den)
    assert not any(r)
    return tuple(q)


@lru_cache(maxsize=None)
def _power_table(N: int) -> np.ndarray:
    """Row k holds ζ^k reduced to the power basis (integer entries)."""
    phi = cyclotomic_polynomial(N)
    deg = len(phi) - 1
    rows = []
    for k in range(N):
        mono = [0] * k + [1]
        _, r = _polydivmod(mono, phi)
        r = list(r) + [0] * (deg - len(r))
        rows.append(r[:deg])
    table = np.array(rows, dtype=object)
    table.setflags(write=False)
    return table


class CycInt:
    """An element of Q(ζ_N); in practice always a cyclotomic integer."""

    __slots__ = ("N", "coeffs")

    def __init__(self, coeffs, N: int = DEFAULT_N):
        deg = len(cyclotomic_polynomial(N)) - 1
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) > deg:
            coeffs = _reduce_poly(coeffs, N)
        self.N = N
        self.coeffs = coeffs + (Fraction(0),) * (deg - len(coeffs))

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, N=DEFAULT_N):
        return cls((), N)

    @classmethod
    def from_int(cls, a, N=DEFAULT_N):
        return cls((a,), N)

    @classmethod
    def root_of_unity(cls, k, N=DEFAULT_N):
        return cls(_power_table(N)[k % N], N)

    @classmethod
    def from_exponent_counts(cls, counts, N=DEFAULT_N):
        """``Σ_k counts[k] ζ^k``."""
        counts = np.asarray(counts, dtype=object)
        if counts.shape != (N,):
            raise ValueError(f"expected {N} exponent counts")
        return cls(counts.dot(_power_table(N)), N)

    @classmethod
    def sum_of_roots(cls, exponents, N=DEFAULT_N):
        counts = np.bincount(np.asarray(exponents, dtype=np.int64) % N, minlength=N)
        return cls.from_exponent_counts(counts.astype(object), N)

    # -- ring operations ---------------------------------------------------
    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return CycInt.from_int(other, self.N)
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.N != self.N:
            raise ValueError(f"mixed cyclotomic moduli {self.N} and {other.N}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycInt([a + b for a, b in zip(self.coeffs, other.coeffs)], self.N)

    __radd__ = __add__

    def __neg__(self):
        return CycInt([-a for a in self.coeffs], self.N)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        prod = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CycInt(prod, self.N)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = CycInt.from_int(1, self.N)
        for _ in range(k):
            out = out * self
        return out

    def conj(self):
        """Complex conjugation ``ζ^k ↦ ζ^{N-k}``."""
        table = _power_table(self.N)
        out = np.zeros(len(self.coeffs), dtype=object)
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + c * table[(-k) % self.N]
        return CycInt(out, self.N)

    def exact_div(self, d: int):
        """Divide by an integer, requiring the quotient to stay integral."""
        out = [c / d for c in self.coeffs]
        if any(c.denominator != 1 for c in out):
            raise ArithmeticError(f"{self} is not divisible by {d} in Z[ζ_{self.N}]")
        return CycInt(out, self.N)

    # -- comparison / conversion ------------------------------------------
    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def as_rational_integer(self):
        c0 = self.coeffs[0]
        if any(self.coeffs[1:]) or c0.denominator != 1:
            return None
        return int(c0)

    def approx(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.N)
        return complex(sum(float(c) * z ** i for i, c in enumerate(self.coeffs)))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
                terms.append(f"{coef}ζ{self.N}^{i}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    def __repr__(self):
        return f"CycInt({self})"


def _reduce_poly(coeffs, N):
    table = _power_table(N)
    deg = table.shape[1]
    out = [Fraction(0)] * deg
    for k, c in enumerate(coeffs):
        if c:
            row = table[k % N]
            for i in range(deg):
                out[i] += c * row[i]
    return tuple(out)


def root_of_unity(k: int, N: int = DEFAULT_N) -> CycInt:
    return CycInt.root_of_unity(k, N)


def as_rational_integer(a: CycInt):
    return a.as_rational_integer()


def approx(a: CycInt) -> complex:
    return a.approx()
