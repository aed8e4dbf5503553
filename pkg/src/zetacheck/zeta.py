"""Analytic side: factor zeta(X, s) and evaluate its leading term at s = n < 0.

A factorization is a multiset of three kinds of factor.  ``LFactor(chi)``
is L(s, chi), ``CurveFactor(q, P)`` is P(q^-s) / ((1 - q^-s)(1 - q^(1-s)))
and ``EulerAdjust(N, e)`` is (1 - N^-s)^e.  Only L-factors can vanish at
a negative integer, and then to order one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

from .cyclotomic import CyclotomicNumber
from .dirichlet import DirichletCharacter, character_group, l_derivative_negative, l_value_negative, splitting_data, vanishes_at
from .errors import ExactUnavailable, InternalInconsistency, NonNegativeWeight, PrecisionUnachievable
from .numeric import Ball
from .scheme import AffineLine, Curve, Disjoint, Glue, NumberRing, SchemeExpr, SpecFq


@dataclass(frozen=True)
class LFactor:
    chi: DirichletCharacter


@dataclass(frozen=True)
class CurveFactor:
    q: int
    numerator: tuple = (1,)


@dataclass(frozen=True)
class EulerAdjust:
    N: int
    exponent: int  # +1 or -1


Factor = Union[LFactor, CurveFactor, EulerAdjust]


def _factor_key(f: Factor):
    if isinstance(f, LFactor):
        return (0, f.chi.modulus, f.chi.exps)
    if isinstance(f, CurveFactor):
        return (1, f.q, f.numerator)
    return (2, f.N, -f.exponent)


class ZetaFactorization:
    """Canonical multiset of factors; inverse Euler adjustments cancel on construction."""

    __slots__ = ("factors",)

    def __init__(self, factors=()):
        net: Counter = Counter()
        rest = []
        for f in factors:
            if isinstance(f, EulerAdjust):
                if f.exponent not in (1, -1) or f.N < 2:
                    raise ValueError(f"bad Euler adjustment {f!r}")
                net[f.N] += f.exponent
            else:
                rest.append(f)
        for N, k in net.items():
            rest.extend([EulerAdjust(N, 1 if k > 0 else -1)] * abs(k))
        self.factors = tuple(sorted(rest, key=_factor_key))

    def __add__(self, other: ZetaFactorization) -> ZetaFactorization:
        return ZetaFactorization(self.factors + other.factors)

    def __eq__(self, other) -> bool:
        return isinstance(other, ZetaFactorization) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __repr__(self) -> str:
        return f"ZetaFactorization({list(self.factors)!r})"

    def counts(self) -> Counter:
        return Counter(self.factors)


@dataclass(frozen=True)
class SpecialValue:
    order: int
    leading: Union[Fraction, Ball]
    sign_known: bool
    mode: str  # "exact" or "numeric"

    @property
    def sign(self) -> int:
        if isinstance(self.leading, Fraction):
            return 1 if self.leading > 0 else -1
        return 1 if self.leading.mid > 0 else -1

    def absolute(self) -> Union[Fraction, Ball]:
        return abs(self.leading)


def factorize(expr: SchemeExpr) -> ZetaFactorization:
    """Factorization of zeta(expr, s); ``expr`` must be normalized."""
    if isinstance(expr, NumberRing):
        out: list[Factor] = [LFactor(chi) for chi in character_group(expr.field)]
        for p in sorted(expr.removed):
            _, f, g = splitting_data(expr.field, p)
            out.extend([EulerAdjust(p**f, 1)] * g)
        return ZetaFactorization(out)
    if isinstance(expr, SpecFq):
        return ZetaFactorization([EulerAdjust(expr.q, -1)])
    if isinstance(expr, AffineLine):
        return ZetaFactorization([CurveFactor(expr.q, (1,)), EulerAdjust(expr.q, 1)])
    if isinstance(expr, Curve):
        out = [CurveFactor(expr.q, tuple(expr.numerator))]
        out.extend(EulerAdjust(expr.q**d, 1) for d in expr.removed)
        return ZetaFactorization(out)
    if isinstance(expr, Disjoint):
        out = []
        for part in expr.parts:
            out.extend(factorize(part).factors)
        return ZetaFactorization(out)
    if isinstance(expr, Glue):
        N = expr.residue_size
        if N is None:
            raise ValueError("glue selections are unresolved; normalize first")
        return ZetaFactorization(factorize(expr.left).factors + factorize(expr.right).factors + (EulerAdjust(N, 1),))
    raise TypeError(f"not a scheme expression: {expr!r}")


def _check_weight(n: int) -> None:
    if n >= 0:
        raise NonNegativeWeight(f"weight n = {n} must be strictly negative")


def factor_order(f: Factor, n: int) -> int:
    return 1 if isinstance(f, LFactor) and vanishes_at(n, f.chi) else 0


def zeta_order(f: ZetaFactorization, n: int) -> int:
    _check_weight(n)
    return sum(factor_order(x, n) for x in f)


def rational_factor_value(f: Factor, n: int) -> Fraction:
    """Value at s = n of a curve factor or Euler adjustment."""
    if isinstance(f, EulerAdjust):
        return Fraction(1 - f.N ** (-n)) ** f.exponent
    if isinstance(f, CurveFactor):
        t = f.q ** (-n)
        P = sum(c * t**i for i, c in enumerate(f.numerator))
        return Fraction(P, (1 - t) * (1 - f.q * t))
    raise TypeError(repr(f))


@lru_cache(maxsize=4096)
def _l_derivative(n: int, chi: DirichletCharacter, bits: int) -> Ball:
    return l_derivative_negative(n, chi, bits)


def special_value(f: ZetaFactorization, n: int, mode: str = "exact", precision_bits: int = 128) -> SpecialValue:
    """Leading Taylor coefficient of zeta at s = n.

    Exact mode multiplies exact L-values in a cyclotomic field and insists
    the product is rational; it refuses when some L-factor vanishes.
    Numeric mode returns a real ball of relative radius at most
    2^-precision_bits.
    """
    _check_weight(n)
    if mode not in ("exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    rational = Fraction(1)
    values = CyclotomicNumber.rational(1)
    vanishing: list[DirichletCharacter] = []
    for x in f:
        if isinstance(x, LFactor):
            if vanishes_at(n, x.chi):
                vanishing.append(x.chi)
            else:
                values = values * l_value_negative(n, x.chi)
        else:
            rational *= rational_factor_value(x, n)
    order = len(vanishing)

    if mode == "exact":
        if vanishing:
            raise ExactUnavailable(f"{order} L-factor(s) vanish at s = {n}; the leading term needs L'")
        if not values.is_rational():
            raise InternalInconsistency(f"product of L-values {values!r} is not rational")
        leading = rational * values.to_fraction()
        if leading == 0:
            raise InternalInconsistency("exact leading coefficient is zero")
        return SpecialValue(0, leading, True, "exact")

    # each factor contributes about one ulp; budget for the whole product
    guard = 8 + max(order + 1, 1).bit_length()
    bits = precision_bits + guard
    with mpmath.workprec(bits + 32):
        acc = Ball.exact(values.to_complex()) * rational
        for chi in vanishing:
            acc = acc * _l_derivative(n, chi, bits)
        re, im = mpmath.re(acc.mid), mpmath.im(acc.mid)
        if abs(im) > acc.rad + abs(re) * mpmath.mpf(2) ** (-precision_bits):
            raise InternalInconsistency(f"leading coefficient has imaginary part {mpmath.nstr(im, 5)}")
        ball = Ball(re, acc.rad + abs(im))
        if not ball.excludes_zero() or ball.rad > abs(re) * mpmath.mpf(2) ** (-precision_bits):
            raise PrecisionUnachievable(f"could not certify {precision_bits} bits")
    return SpecialValue(order, ball, True, "numeric")


def evaluate(expr: SchemeExpr, n: int, mode: str = "auto", precision_bits: int = 128) -> SpecialValue:
    """special_value(factorize(expr)); ``auto`` picks exact when no L-factor vanishes."""
    f = factorize(expr)
    if mode == "auto":
        mode = "numeric" if zeta_order(f, n) else "exact"
    return special_value(f, n, mode, precision_bits)
