"""Dirichlet characters of abelian fields and their L-values at negative integers.

Exact values come from generalized Bernoulli numbers and live in
``CyclotomicNumber``; Gauss sums and derivatives L'(n, chi) at the
parity-forced zeros are numeric ``Ball`` results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd

import mpmath
from mpmath import mpf

from .arith import bernoulli_poly, lcm, sorted_divisors, unit_group
from .cyclotomic import CyclotomicNumber
from .errors import InvalidField, NotAVanishingPoint
from .fields import (
    AbelianByModulus,
    Cyclotomic,
    CyclotomicReal,
    FieldSpec,
    Quadratic,
    RationalField,
    validate_field,
)
from .numeric import Ball, refine


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod ``modulus``.

    ``exps[i] = c`` means chi(g_i) = exp(2 pi i c / n_i) for the generators
    g_i of order n_i fixed by ``arith.unit_group(modulus)``.
    """

    modulus: int
    exps: tuple[int, ...]

    def __post_init__(self):
        ug = unit_group(self.modulus)
        if len(self.exps) != len(ug.orders):
            raise ValueError(f"expected {len(ug.orders)} exponents for modulus {self.modulus}")
        object.__setattr__(self, "exps", tuple(c % n for c, n in zip(self.exps, ug.orders)))

    @classmethod
    def trivial(cls, modulus: int = 1) -> DirichletCharacter:
        return cls(modulus, (0,) * len(unit_group(modulus).orders))

    @cached_property
    def order(self) -> int:
        ug = unit_group(self.modulus)
        return lcm(*(n // gcd(n, c) for c, n in zip(self.exps, ug.orders)))

    def log(self, a: int) -> int | None:
        """k with chi(a) = zeta_order^k, or None when gcd(a, modulus) > 1."""
        ug = unit_group(self.modulus)
        v = ug.log(a)
        if v is None:
            return None
        e = self.order
        return sum(c * l * e // n for c, l, n in zip(self.exps, v, ug.orders)) % e

    def __call__(self, a: int) -> CyclotomicNumber:
        k = self.log(a)
        if k is None:
            return CyclotomicNumber.rational(0, self.order)
        return CyclotomicNumber.root_of_unity(self.order, k)

    def complex_value(self, a: int):
        k = self.log(a)
        if k is None:
            return mpmath.mpc(0)
        return mpmath.expjpi(mpf(2 * k) / self.order)

    @property
    def is_trivial(self) -> bool:
        return not any(self.exps)

    @cached_property
    def parity(self) -> int:
        """a in {0, 1} with chi(-1) = (-1)^a."""
        k = self.log(-1)
        return 0 if k == 0 else 1

    @cached_property
    def conductor(self) -> int:
        m = self.modulus
        units = unit_group(m).units()
        for f in sorted_divisors(m):
            if all(self.log(u) == 0 for u in units if (u - 1) % f == 0):
                return f
        return m

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @cached_property
    def primitive(self) -> DirichletCharacter:
        f = self.conductor
        if f == self.modulus:
            return self
        ug = unit_group(f)
        exps = []
        e = self.order
        for g, n in zip(ug.gens, ug.orders):
            u = g
            while gcd(u, self.modulus) != 1:
                u += f
            k = self.log(u)
            exps.append(k * n // e)
        return DirichletCharacter(f, tuple(exps))

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, tuple(-c for c in self.exps))

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if other.modulus != self.modulus:
            m = lcm(self.modulus, other.modulus)
            return self.induce(m) * other.induce(m)
        return DirichletCharacter(self.modulus, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def induce(self, m: int) -> DirichletCharacter:
        """The character mod m (a multiple of modulus) induced from this one."""
        if m % self.modulus:
            raise ValueError("can only induce to a multiple of the modulus")
        ug = unit_group(m)
        e = self.order
        return DirichletCharacter(m, tuple(self.log(g) * n // e for g, n in zip(ug.gens, ug.orders)))

    def __repr__(self) -> str:
        return f"DirichletCharacter(mod {self.modulus}, exps={self.exps}, order={self.order})"


def characters_mod(m: int) -> list[DirichletCharacter]:
    ug = unit_group(m)
    return [DirichletCharacter(m, c) for c in product(*(range(n) for n in ug.orders))]


@dataclass(frozen=True)
class CharacterGroup:
    field: FieldSpec
    chars: tuple[DirichletCharacter, ...]

    @property
    def degree(self) -> int:
        return len(self.chars)

    @property
    def even_count(self) -> int:
        return sum(1 for c in self.chars if c.parity == 0)

    @property
    def totally_real(self) -> bool:
        return self.even_count == self.degree

    def __iter__(self):
        return iter(self.chars)

    def __len__(self) -> int:
        return len(self.chars)


def _sort_key(chi: DirichletCharacter):
    return (chi.modulus, chi.exps)


@lru_cache(maxsize=None)
def character_group(field: FieldSpec) -> CharacterGroup:
    field = validate_field(field)
    if isinstance(field, RationalField):
        chars = {DirichletCharacter.trivial()}
    elif isinstance(field, Quadratic):
        f, parity = abs(field.D), (0 if field.D > 0 else 1)
        found = [
            c
            for c in characters_mod(f)
            if c.order == 2 and c.conductor == f and c.parity == parity
        ]
        if len(found) != 1:
            raise InvalidField(f"no unique quadratic character for discriminant {field.D}")
        chars = {DirichletCharacter.trivial(), found[0]}
    elif isinstance(field, Cyclotomic):
        chars = {c.primitive for c in characters_mod(field.m)}
    elif isinstance(field, CyclotomicReal):
        chars = {c.primitive for c in characters_mod(field.m) if c.parity == 0}
    elif isinstance(field, AbelianByModulus):
        chars = {
            c.primitive
            for c in characters_mod(field.m)
            if all(c.log(h) == 0 for h in field.H)
        }
    else:  # pragma: no cover - validate_field rejects these
        raise InvalidField(repr(field))
    return CharacterGroup(field, tuple(sorted(chars, key=_sort_key)))


def field_degree(field: FieldSpec) -> int:
    return character_group(field).degree


@lru_cache(maxsize=None)
def generalized_bernoulli(k: int, chi: DirichletCharacter) -> CyclotomicNumber:
    """B_{k,chi} = f^(k-1) * sum_{a=1}^{f} chi(a) B_k(a/f) for primitive chi of conductor f."""
    if k < 1:
        raise ValueError("k must be positive")
    chi = chi.primitive
    f = chi.modulus
    coeffs = [Fraction(0)] * chi.order
    for a in range(1, f + 1):
        j = chi.log(a)
        if j is not None:
            coeffs[j] += bernoulli_poly(k, Fraction(a, f))
    return CyclotomicNumber(chi.order, coeffs) * Fraction(f) ** (k - 1)


def vanishes_at(n: int, chi: DirichletCharacter) -> bool:
    """L(n, chi) = 0 for n < 0 exactly when the parity of chi differs from that of 1 - n."""
    return chi.parity != (1 - n) % 2


def l_value_negative(n: int, chi: DirichletCharacter) -> CyclotomicNumber:
    if n >= 0:
        raise ValueError("n must be negative")
    if vanishes_at(n, chi):
        return CyclotomicNumber.rational(0, chi.order)
    k = 1 - n
    return -generalized_bernoulli(k, chi) / k


def splitting_data(field: FieldSpec, p: int) -> tuple[int, int, int]:
    """(e, f, g) for the rational prime p in the field."""
    group = character_group(field)
    unramified = [c for c in group if c.modulus % p != 0]
    e = group.degree // len(unramified)
    f = 1
    for c in unramified:
        k = c.log(p)
        f = lcm(f, c.order // gcd(c.order, k))
    g = len(unramified) // f
    return e, f, g


def gauss_sum(chi: DirichletCharacter, precision_bits: int = 128) -> Ball:
    """tau(chi) = sum_{a mod f} chi(a) exp(2 pi i a / f) for primitive chi."""
    chi = chi.primitive
    f = chi.modulus

    def compute():
        return mpmath.fsum(
            chi.complex_value(a) * mpmath.expjpi(mpf(2 * a) / f) for a in range(1, f + 1)
        )

    tau = refine(compute, precision_bits)
    with mpmath.workprec(precision_bits + 16):
        if abs(abs(tau.mid) ** 2 - f) > 4 * f * mpf(2) ** (-precision_bits):
            raise ArithmeticError(f"|tau|^2 = {abs(tau.mid) ** 2} differs from conductor {f}")
    return tau


def _l_series_value(s: int, chi: DirichletCharacter):
    """L(s, chi) for s >= 2 through Hurwitz zeta values, at the current precision."""
    f = chi.modulus
    if f == 1:
        return mpmath.zeta(s)
    acc = mpmath.mpc(0)
    for a in range(1, f):
        if gcd(a, f) == 1:
            acc += chi.complex_value(a) * mpmath.zeta(s, mpf(a) / f)
    return acc / mpf(f) ** s


def l_derivative_negative(n: int, chi: DirichletCharacter, precision_bits: int = 128) -> Ball:
    """L'(n, chi) at a parity-forced zero n < 0.

    With a the parity of chi, Lambda(s) = (f/pi)^((s+a)/2) Gamma((s+a)/2) L(s, chi)
    satisfies Lambda(s, chi) = eps(chi) Lambda(1-s, conj chi), where
    eps = tau(chi) / (i^a sqrt f).  At s = n the Gamma factor has a simple pole
    with residue 2 (-1)^m / m!, m = -(n+a)/2, which gives

        L'(n, chi) = eps(chi) (f/pi)^(1/2 - n) Gamma((1-n+a)/2) (-1)^m m!/2 * L(1-n, conj chi).
    """
    if n >= 0:
        raise ValueError("n must be negative")
    chi = chi.primitive
    if not vanishes_at(n, chi):
        raise NotAVanishingPoint(f"L({n}, chi) is nonzero for {chi!r}")
    f, a = chi.modulus, chi.parity
    m = -(n + a) // 2
    conj = chi.conjugate()

    def compute():
        tau = mpmath.fsum(
            chi.complex_value(b) * mpmath.expjpi(mpf(2 * b) / f) for b in range(1, f + 1)
        )
        eps = tau / (mpmath.mpc(0, 1) ** a * mpmath.sqrt(f))
        pref = (mpf(f) / mpmath.pi) ** (mpf(1) / 2 - n) * mpmath.gamma(mpf(1 - n + a) / 2)
        pref *= (-1) ** m * mpmath.factorial(m) / 2
        return eps * pref * _l_series_value(1 - n, conj)

    return refine(compute, precision_bits)
