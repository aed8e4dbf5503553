"""Exact arithmetic in Q(zeta_N).

Elements are coefficient vectors of length N for sum c_k zeta_N^k.  Products
are taken in Q[x]/(x^N - 1) and then reduced modulo the N-th cyclotomic
polynomial, so the canonical representative has zero coefficients in
degrees >= phi(N).  Two elements of the same order are equal iff their
vectors are equal; elements of different orders are compared after lifting
both to the lcm of the orders.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

import mpmath

from .arith import lcm, sorted_divisors

Rational = Union[int, Fraction]


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in sorted_divisors(n):
        if d < n:
            num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _reduce(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(n - 1, deg - 1, -1):
        t = c[i]
        if t:
            shift = i - deg
            for j, y in enumerate(phi):
                if y:
                    c[shift + j] -= t * y
    return tuple(c)


class CyclotomicNumber:
    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs, *, reduced: bool = False):
        if order < 1:
            raise ValueError("order must be positive")
        c = [Fraction(x) for x in coeffs]
        if len(c) > order:
            folded = [Fraction(0)] * order
            for k, x in enumerate(c):
                folded[k % order] += x
            c = folded
        c += [Fraction(0)] * (order - len(c))
        self.order = order
        self.coeffs = tuple(c) if reduced else _reduce(c, order)

    @classmethod
    def rational(cls, x: Rational, order: int = 1) -> CyclotomicNumber:
        return cls(order, [x], reduced=True)

    @classmethod
    def root_of_unity(cls, order: int, k: int) -> CyclotomicNumber:
        c = [0] * order
        c[k % order] = 1
        return cls(order, c)

    # -- structure -------------------------------------------------------
    def lift(self, order: int) -> CyclotomicNumber:
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        c = [Fraction(0)] * order
        for k, x in enumerate(self.coeffs):
            c[k * step] = x
        return CyclotomicNumber(order, c)

    def _common(self, other) -> tuple[CyclotomicNumber, CyclotomicNumber]:
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.rational(Fraction(other), self.order)
        if other.order == self.order:
            return self, other
        m = lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    def galois(self, a: int) -> CyclotomicNumber:
        """Image under the automorphism zeta_N -> zeta_N^a, gcd(a, N) = 1."""
        n = self.order
        if gcd(a, n) != 1:
            raise ValueError("Galois exponent must be a unit")
        c = [Fraction(0)] * n
        for k, x in enumerate(self.coeffs):
            if x:
                c[k * a % n] += x
        return CyclotomicNumber(n, c)

    def conjugate(self) -> CyclotomicNumber:
        return self.galois(-1)

    def is_rational(self) -> bool:
        return all(self.galois(a) == self for a in range(1, self.order) if gcd(a, self.order) == 1)

    def to_fraction(self) -> Fraction:
        # canonical form of a rational element is its constant term
        if any(self.coeffs[1:]):
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_complex(self) -> mpmath.mpc:
        """Value at zeta_N = exp(2 pi i / N) at the current mpmath precision."""
        acc = mpmath.mpc(0)
        for k, x in enumerate(self.coeffs):
            if x:
                acc += mpmath.mpf(x.numerator) / x.denominator * mpmath.expjpi(mpmath.mpf(2 * k) / self.order)
        return acc

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        a, b = self._common(other)
        return CyclotomicNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)], reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-x for x in self.coeffs], reduced=True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.order, [x * other for x in self.coeffs], reduced=True)
        a, b = self._common(other)
        n = a.order
        c = [Fraction(0)] * n
        bnz = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in bnz:
                    c[(i + j) % n] += x * y
        return CyclotomicNumber(n, c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = CyclotomicNumber.rational(1, self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return not any(self.coeffs[1:]) and self.coeffs[0] == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        # equal elements of different orders must collide, so irrationals share one bucket
        return hash("CyclotomicNumber")

    def __repr__(self) -> str:
        terms = [f"{x}*z{self.order}^{k}" if k else str(x) for k, x in enumerate(self.coeffs) if x]
        return "CyclotomicNumber(" + (" + ".join(terms) or "0") + ")"
