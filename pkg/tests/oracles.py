"""Reference computations that share no code with the package.

Everything here is brute force or a classical series, written directly
from the definitions, so agreement with the package is real evidence.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, isqrt

import mpmath
import sympy


# -- integers -------------------------------------------------------------

def is_fundamental_brute(D: int) -> bool:
    """D is the discriminant of a quadratic field: D != 1, D = 0,1 mod 4, and no
    square f^2 > 1 leaves a discriminant-shaped quotient."""
    if D in (0, 1) or D % 4 not in (0, 1):
        return False
    for f in range(2, isqrt(abs(D)) + 1):
        if D % (f * f) == 0 and (D // (f * f)) % 4 in (0, 1):
            return False
    return True


def sum_of_two_squares_reps(p: int) -> int:
    return sum(1 for a in range(-p, p + 1) for b in range(-p, p + 1) if a * a + b * b == p)


def gaussian_splitting(p: int) -> tuple[int, int, int]:
    """(e, f, g) of p in Z[i] from a norm search."""
    if p == 2:
        return (2, 1, 1)
    return (1, 1, 2) if sum_of_two_squares_reps(p) else (1, 2, 1)


def order_mod(a: int, m: int) -> int:
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k


def square_roots_mod(D: int, p: int) -> int:
    return sum(1 for x in range(p) if (x * x - D) % p == 0)


def quadratic_splitting(D: int, p: int) -> tuple[int, int, int]:
    """Splitting of an odd prime p in Q(sqrt D) by counting roots of x^2 - D."""
    if D % p == 0:
        return (2, 1, 1)
    return (1, 1, 2) if square_roots_mod(D, p) == 2 else (1, 2, 1)


def kronecker(D: int, a: int) -> int:
    """The quadratic character (D / a) of the field Q(sqrt D)."""
    return int(sympy.kronecker_symbol(D, a))


# -- Bernoulli ------------------------------------------------------------

def bernoulli_recurrence(k: int) -> Fraction:
    """B_k from sum_{j<=m} C(m+1, j) B_j = 0 (so B_1 = -1/2)."""
    B = [Fraction(1)]
    for m in range(1, k + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[k]


def bernoulli_poly_sympy(k: int, x: Fraction) -> Fraction:
    v = sympy.bernoulli(k, sympy.Rational(x.numerator, x.denominator))
    return Fraction(int(v.p), int(v.q))


def generalized_bernoulli_brute(k: int, f: int, chi) -> complex:
    """f^(k-1) sum chi(a) B_k(a/f) with chi a Python function returning complex values."""
    with mpmath.workdps(60):
        acc = mpmath.mpc(0)
        for a in range(1, f + 1):
            b = bernoulli_poly_sympy(k, Fraction(a, f))
            acc += chi(a) * mpmath.mpf(b.numerator) / b.denominator
        return acc * f ** (k - 1)


def cubic_character_mod7(j: int):
    """The characters of order 3 mod 7, via the primitive root 3."""
    w = mpmath.expjpi(mpmath.mpf(2) / 3)

    def chi(a: int):
        if a % 7 == 0:
            return mpmath.mpc(0)
        k = next(k for k in range(6) if pow(3, k, 7) == a % 7)
        return w ** (j * k)

    return chi


# -- zeta and L-series ------------------------------------------------------

def zeta3_apery(terms: int = 80):
    """zeta(3) = (5/2) sum (-1)^(k+1) / (k^3 C(2k, k))."""
    s = mpmath.mpf(0)
    for k in range(1, terms + 1):
        s += mpmath.mpf((-1) ** (k + 1)) / (mpmath.mpf(k) ** 3 * comb(2 * k, k))
    return mpmath.mpf(5) / 2 * s


def zeta_hasse(s, terms: int = 200):
    """Globally convergent Hasse series, the Euler transform of the eta series."""
    acc = mpmath.mpf(0)
    for n in range(terms):
        inner = mpmath.fsum((-1) ** k * comb(n, k) * mpmath.power(k + 1, -s) for k in range(n + 1))
        acc += inner / mpmath.mpf(2) ** (n + 1)
    return acc / (1 - mpmath.power(2, 1 - s))


def beta_euler(s, terms: int = 200):
    """L(s, chi_-4) = sum (-1)^k (2k+1)^-s, Euler transformed so it converges for all s."""
    acc = mpmath.mpf(0)
    for n in range(terms):
        inner = mpmath.fsum((-1) ** k * comb(n, k) * mpmath.power(2 * k + 1, -s) for k in range(n + 1))
        acc += inner / mpmath.mpf(2) ** (n + 1)
    return acc


def central_difference(fn, x, h):
    return (fn(x + h) - fn(x - h)) / (2 * h)


# -- curves -----------------------------------------------------------------

def closed_point_counts_series(q: int, numerator: tuple, upto: int) -> list[int]:
    """a_d from Z(T) = P(T) / ((1-T)(1-qT)) = prod_d (1 - T^d)^(-a_d), by peeling factors."""
    N = upto + 1
    Z = [Fraction(0)] * N
    P = list(numerator) + [0] * N
    geo = [sum(q**j for j in range(i + 1)) for i in range(N)]  # 1/((1-T)(1-qT))
    for i in range(N):
        Z[i] = sum(P[j] * geo[i - j] for j in range(i + 1))
    counts = []
    for d in range(1, upto + 1):
        a = Z[d]
        counts.append(int(a))
        # multiply Z by (1 - T^d)^a to remove that factor
        for _ in range(int(a)):
            Z = [Z[i] - (Z[i - d] if i >= d else 0) for i in range(N)]
    return counts

