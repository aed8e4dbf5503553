"""Midpoint-radius balls over mpmath numbers.

A ``Ball`` asserts that the true value lies within ``rad`` of ``mid``
(in absolute value, so for complex balls it is a disk).  Arithmetic
propagates the radius and adds a few ulps of the working precision for
rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import mpmath
from mpmath import mpc, mpf

from .errors import PrecisionUnachievable

Number = Union[int, Fraction, mpf, mpc]


def to_mpf(x: Number):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, (mpf, mpc)):
        return x
    return mpf(x)


def _ulp(x) -> mpf:
    return abs(x) * mpf(2) ** (2 - mpmath.mp.prec)


def _exact_neg(x):
    # plain unary minus rounds to the ambient precision
    if isinstance(x, mpc):
        return mpc(_exact_neg(x.real), _exact_neg(x.imag))
    return mpmath.mp.make_mpf(mpmath.libmp.mpf_neg(x._mpf_))


@dataclass(frozen=True)
class Ball:
    mid: Union[mpf, mpc]
    rad: mpf

    @classmethod
    def exact(cls, x: Number) -> Ball:
        v = to_mpf(x)
        return cls(v, _ulp(v))

    @property
    def is_complex(self) -> bool:
        return isinstance(self.mid, mpc)

    def __mul__(self, other) -> Ball:
        if not isinstance(other, Ball):
            v = to_mpf(other)
            mid = self.mid * v
            return Ball(mid, self.rad * abs(v) + _ulp(mid))
        mid = self.mid * other.mid
        rad = abs(self.mid) * other.rad + abs(other.mid) * self.rad + self.rad * other.rad
        return Ball(mid, rad + _ulp(mid))

    __rmul__ = __mul__

    def __truediv__(self, other) -> Ball:
        if not isinstance(other, Ball):
            other = Ball(to_mpf(other), mpf(0))
        denom = abs(other.mid)
        if denom <= other.rad:
            raise ZeroDivisionError("divisor ball contains zero")
        mid = self.mid / other.mid
        rad = (abs(self.mid) * other.rad + denom * self.rad) / (denom * (denom - other.rad))
        return Ball(mid, rad + _ulp(mid))

    def __neg__(self) -> Ball:
        return Ball(_exact_neg(self.mid), self.rad)

    def __abs__(self) -> Ball:
        if self.is_complex:
            return Ball(abs(self.mid), self.rad + _ulp(self.mid))
        return Ball(_exact_neg(self.mid) if self.mid < 0 else self.mid, self.rad)

    def real(self) -> Ball:
        return Ball(mpmath.re(self.mid), self.rad)

    def imag(self) -> Ball:
        return Ball(mpmath.im(self.mid), self.rad)

    def _compare_prec(self) -> int:
        # enough bits to resolve the radius against the midpoint
        if not self.rad or not self.mid:
            return mpmath.mp.prec + 64
        return max(mpmath.mp.prec, int(mpmath.mag(self.mid) - mpmath.mag(self.rad)) + 64)

    def contains(self, x: Number) -> bool:
        with mpmath.workprec(self._compare_prec()):
            return abs(self.mid - to_mpf(x)) <= self.rad

    def overlaps(self, other: Ball) -> bool:
        with mpmath.workprec(max(self._compare_prec(), other._compare_prec())):
            return abs(self.mid - other.mid) <= self.rad + other.rad

    def excludes_zero(self) -> bool:
        return abs(self.mid) > self.rad

    def relative_error(self):
        return self.rad / abs(self.mid) if self.mid else mpmath.inf

    def mid_str(self, digits: int = 40) -> str:
        return mpmath.nstr(self.mid, digits)

    def rad_str(self) -> str:
        return mpmath.nstr(self.rad, 5)

    def __str__(self) -> str:
        return f"{self.mid_str()} +/- {self.rad_str()}"


def refine(compute: Callable[[], Number], precision_bits: int, guard: int = 32) -> Ball:
    """Evaluate ``compute`` at two working precisions and bound the error by their gap.

    The bound is an a posteriori estimate: the difference between a result at
    precision + guard and one at precision + 2*guard, plus rounding slack.
    Raises PrecisionUnachievable if the estimate exceeds 2**-precision_bits
    relative to the value.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    with mpmath.workprec(precision_bits + guard):
        low = compute()
    with mpmath.workprec(precision_bits + 2 * guard):
        high = compute()
        gap = abs(high - low)
        scale = abs(high)
        rad = gap + scale * mpf(2) ** (-(precision_bits + guard)) + mpf(2) ** (-(precision_bits + 2 * guard))
        if rad > mpf(2) ** (-precision_bits) * max(scale, mpf(1)):
            raise PrecisionUnachievable(
                f"error estimate {mpmath.nstr(rad, 5)} exceeds 2^-{precision_bits}"
            )
    return Ball(high, rad)
