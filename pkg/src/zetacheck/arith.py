"""Elementary integer number theory shared by the other modules."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from sympy import divisors, factorint, isprime, primitive_root
from sympy.ntheory.modular import crt


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorint(q)
    if len(f) != 1:
        return None
    ((p, k),) = f.items()
    return int(p), int(k)


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    return all(e == 1 for e in factorint(n).values())


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def sorted_divisors(n: int) -> list[int]:
    return [int(d) for d in divisors(n)]


def mobius(n: int) -> int:
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def euler_phi(n: int) -> int:
    out = n
    for p in factorint(n):
        out = out // p * (p - 1)
    return out


def multiplicative_order(a: int, m: int) -> int:
    if m == 1:
        return 1
    a %= m
    k, x = 1, a
    while x != 1:
        x = x * a % m
        k += 1
    return k


class UnitGroup:
    """(Z/mZ)^* as a product of cyclic groups with fixed generators.

    Generators are chosen prime power by prime power: a primitive root for
    odd p, -1 and 5 for 2^k with k >= 3, -1 for 4.  Each local generator is
    lifted by CRT to be 1 at the other prime powers.  The choice is
    deterministic, so exponent vectors of characters are comparable.
    """

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("modulus must be positive")
        self.modulus = m
        gens: list[int] = []
        orders: list[int] = []
        parts = [p**k for p, k in sorted(factorint(m).items())]
        for p, k in sorted(factorint(m).items()):
            pk = p**k
            if p == 2:
                local = [] if k == 1 else [(pk - 1, 2)] if k == 2 else [(pk - 1, 2), (5, 2 ** (k - 2))]
            else:
                local = [(int(primitive_root(pk)), pk - pk // p)]
            for g, order in local:
                residues = [g if part == pk else 1 for part in parts]
                lifted = int(crt(parts, residues)[0]) % m if len(parts) > 1 else g % m
                gens.append(lifted)
                orders.append(order)
        self.gens = tuple(gens)
        self.orders = tuple(orders)
        self.exponent = lcm(*orders)
        table: dict[int, tuple[int, ...]] = {}
        for e in product(*(range(o) for o in orders)):
            u = 1
            for g, k in zip(gens, e):
                u = u * pow(g, k, m) % m
            table[u % m] = e
        self._log = table
        self.order = len(table)

    def log(self, u: int) -> tuple[int, ...] | None:
        """Exponent vector of u with respect to ``gens``; None for non-units."""
        if gcd(u, self.modulus) != 1:
            return None
        return self._log[u % self.modulus]

    def units(self) -> list[int]:
        return sorted(self._log)


@lru_cache(maxsize=None)
def unit_group(m: int) -> UnitGroup:
    return UnitGroup(m)


@lru_cache(maxsize=None)
def bernoulli_numbers(k: int) -> tuple[Fraction, ...]:
    """B_0..B_k with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    bs = [Fraction(1)]
    for m in range(1, k + 1):
        acc = Fraction(0)
        c = 1  # C(m+1, j)
        for j in range(m):
            acc += c * bs[j]
            c = c * (m + 1 - j) // (j + 1)
        bs.append(-acc / (m + 1))
    return tuple(bs)


def bernoulli_poly(k: int, x: Fraction) -> Fraction:
    bs = bernoulli_numbers(k)
    acc = Fraction(0)
    c = 1
    for j in range(k + 1):
        acc += c * bs[j] * x ** (k - j)
        c = c * (k - j) // (j + 1)
    return acc


def weil_power_sums(numerator: tuple[int, ...], upto: int) -> list[int]:
    """Power sums S_e = sum alpha_i^e of the inverse roots of P(T) = prod(1 - alpha_i T).

    Newton's identities on the reversed polynomial; S_0 is not included,
    index e-1 holds S_e.
    """
    # c_j = coefficient of T^j in P; P = prod(1 - a T) => elementary e_j = (-1)^j c_j
    c = list(numerator) + [0] * upto
    sums: list[int] = []
    for e in range(1, upto + 1):
        ej = (-1) ** e * c[e] if e < len(c) else 0
        s = (-1) ** (e - 1) * e * ej
        for i in range(1, e):
            ei = (-1) ** i * c[i] if i < len(c) else 0
            s += (-1) ** (i - 1) * ei * sums[e - i - 1]
        sums.append(s)
    return sums


def curve_point_counts(q: int, numerator: tuple[int, ...], degree: int) -> int | None:
    """Number of closed points of exact degree ``degree`` on the smooth proper curve.

    None when the numerator yields a negative or fractional count, so it
    cannot come from a curve.
    """
    sums = weil_power_sums(numerator, degree)
    rational = {e: q**e + 1 - sums[e - 1] for e in range(1, degree + 1)}
    total = sum(mobius(degree // e) * rational[e] for e in sorted_divisors(degree))
    if total < 0 or total % degree:
        return None
    return total // degree
