"""Expression algebra for one-dimensional arithmetic schemes.

A scheme is built from number rings O_F[1/S] with F abelian, finite fields,
affine lines and smooth proper curves over F_q (given by their Weil
numerator), disjoint unions, and gluings of two closed points with the
same residue field.  ``normalize`` validates an expression and brings it
to canonical form; all other operations expect normalized input.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional, Union

from .arith import curve_point_counts, is_prime, prime_power
from .dirichlet import character_group, splitting_data
from .errors import GlueMismatch, InvalidCurve, InvalidField, InvalidRemoval, MissingPoint, NonNegativeWeight
from .fields import FieldSpec, RationalField, validate_field


class UnverifiedRemoval(UserWarning):
    """A removed curve point could not be checked against point counts."""


@dataclass(frozen=True)
class NumberRing:
    field: FieldSpec = RationalField()
    removed: frozenset = frozenset()


@dataclass(frozen=True)
class SpecFq:
    q: int


@dataclass(frozen=True)
class AffineLine:
    q: int


@dataclass(frozen=True)
class Curve:
    """Smooth proper curve over F_q with Weil numerator ``numerator`` (low degree first),
    minus one closed point of each degree listed in ``removed``."""

    q: int
    numerator: tuple = (1,)
    removed: tuple = ()

    @property
    def genus(self) -> int:
        return (len(self.numerator) - 1) // 2


@dataclass(frozen=True)
class FiberOver:
    """The ``index``-th closed point above the rational prime p."""

    p: int
    index: int = 0
    residue_size: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class CurvePoint:
    """A closed point of the given degree on a positive-characteristic component."""

    degree: int
    residue_size: Optional[int] = field(default=None, compare=False)


PointSel = Union[FiberOver, CurvePoint]


@dataclass(frozen=True)
class Disjoint:
    parts: tuple = ()


@dataclass(frozen=True)
class Glue:
    left: "SchemeExpr"
    right: "SchemeExpr"
    left_sel: PointSel
    right_sel: PointSel

    @property
    def residue_size(self) -> Optional[int]:
        return self.left_sel.residue_size


SchemeExpr = Union[NumberRing, SpecFq, AffineLine, Curve, Disjoint, Glue]
Z = NumberRing()


@dataclass(frozen=True)
class PlaceProfile:
    r1: int
    r2: int
    generic_chars: tuple


# -- validation helpers ---------------------------------------------------

def _check_q(q: int) -> int:
    pk = prime_power(q)
    if pk is None:
        raise InvalidField(f"{q} is not a prime power")
    return pk[0]


def _check_numerator(q: int, numerator: tuple) -> None:
    P = tuple(int(c) for c in numerator)
    if not P or P[0] != 1:
        raise InvalidCurve(f"Weil numerator must have constant term 1, got {list(P)}")
    if (len(P) - 1) % 2:
        raise InvalidCurve(f"Weil numerator must have even degree, got {len(P) - 1}")
    if len(P) > 1 and P[-1] == 0:
        raise InvalidCurve("Weil numerator has a zero leading coefficient")
    g = (len(P) - 1) // 2
    for i in range(g + 1):
        if P[2 * g - i] != q ** (g - i) * P[i]:
            raise InvalidCurve(f"coefficients violate a_(2g-i) = q^(g-i) a_i at i = {i}")


def available_points(curve: Curve, degree: int, removed: tuple | None = None) -> Optional[int]:
    """Closed points of the given degree left on the curve, or None if the count is not derivable."""
    removed = curve.removed if removed is None else removed
    total = curve_point_counts(curve.q, curve.numerator, degree)
    if total is None:
        return None
    return total - removed.count(degree)


def remove_points(expr: SchemeExpr, primes=(), degrees=()) -> SchemeExpr:
    """Remove full fibers (number rings) or closed points of given degrees (curves)."""
    expr = normalize(expr)
    if isinstance(expr, NumberRing):
        if degrees:
            raise InvalidRemoval("number rings lose whole fibers: give primes, not degrees")
        removed = set(expr.removed)
        for p in primes:
            if not is_prime(p):
                raise MissingPoint(f"no fiber over {p}: not a prime")
            if p in removed:
                raise MissingPoint(f"fiber over {p} already removed")
            removed.add(p)
        return NumberRing(expr.field, frozenset(removed))
    if isinstance(expr, (AffineLine, Curve)):
        if primes:
            raise InvalidRemoval("curves lose closed points: give degrees, not primes")
        base = Curve(expr.q, (1,), (1,)) if isinstance(expr, AffineLine) else expr
        return normalize(Curve(base.q, base.numerator, base.removed + tuple(degrees)))
    raise InvalidRemoval(f"cannot remove points from {type(expr).__name__}; remove inside its components")


# -- normalization --------------------------------------------------------

def normalize(expr: SchemeExpr) -> SchemeExpr:
    if isinstance(expr, NumberRing):
        field_ = validate_field(expr.field)
        for p in expr.removed:
            if not is_prime(p):
                raise MissingPoint(f"no fiber over {p}: not a prime")
        return NumberRing(field_, frozenset(expr.removed))
    if isinstance(expr, SpecFq):
        _check_q(expr.q)
        return expr
    if isinstance(expr, AffineLine):
        _check_q(expr.q)
        return expr
    if isinstance(expr, Curve):
        _check_q(expr.q)
        numerator = tuple(int(c) for c in expr.numerator)
        _check_numerator(expr.q, numerator)
        removed = tuple(sorted(int(d) for d in expr.removed))
        curve = Curve(expr.q, numerator, removed)
        for d in sorted(set(removed)):
            if d < 1:
                raise MissingPoint(f"degree {d} is not positive")
            left = available_points(curve, d, removed=())
            if left is None:
                warnings.warn(
                    f"cannot count degree-{d} points on {numerator}; trusting removal",
                    UnverifiedRemoval,
                    stacklevel=2,
                )
            elif left < removed.count(d):
                raise MissingPoint(f"curve has only {left} closed points of degree {d}")
        if numerator == (1,) and removed == (1,):
            return AffineLine(expr.q)
        return curve
    if isinstance(expr, Disjoint):
        from .dsl import to_text

        flat: list[SchemeExpr] = []
        for part in expr.parts:
            part = normalize(part)
            if isinstance(part, Disjoint):
                flat.extend(part.parts)
            else:
                flat.append(part)
        if len(flat) == 1:
            return flat[0]
        return Disjoint(tuple(sorted(flat, key=to_text)))
    if isinstance(expr, Glue):
        left, right = normalize(expr.left), normalize(expr.right)
        ls = resolve_point(left, expr.left_sel)
        rs = resolve_point(right, expr.right_sel)
        if ls.residue_size != rs.residue_size:
            raise GlueMismatch(f"residue fields of sizes {ls.residue_size} and {rs.residue_size} differ")
        return Glue(left, right, ls, rs)
    raise TypeError(f"not a scheme expression: {expr!r}")


def components(expr: SchemeExpr) -> Iterator[SchemeExpr]:
    """Leaf components in canonical order, descending through unions and gluings."""
    if isinstance(expr, Disjoint):
        for part in expr.parts:
            yield from components(part)
    elif isinstance(expr, Glue):
        yield from components(expr.left)
        yield from components(expr.right)
    else:
        yield expr


def resolve_point(expr: SchemeExpr, sel: PointSel) -> PointSel:
    """Attach the residue field size of the selected closed point."""
    if isinstance(sel, FiberOver):
        if not is_prime(sel.p):
            raise MissingPoint(f"no fiber over {sel.p}: not a prime")
        if sel.index < 0:
            raise MissingPoint("point index must be nonnegative")
        seen = 0
        for comp in components(expr):
            if isinstance(comp, NumberRing) and sel.p not in comp.removed:
                _, f, g = splitting_data(comp.field, sel.p)
                if sel.index < seen + g:
                    return replace(sel, residue_size=sel.p**f)
                seen += g
        raise MissingPoint(f"no point #{sel.index} above {sel.p} (found {seen})")
    if isinstance(sel, CurvePoint):
        d = sel.degree
        if d < 1:
            raise MissingPoint(f"degree {d} is not positive")
        for comp in components(expr):
            if isinstance(comp, SpecFq) and d == 1:
                return replace(sel, residue_size=comp.q)
            if isinstance(comp, (AffineLine, Curve)):
                curve = Curve(comp.q, (1,), (1,)) if isinstance(comp, AffineLine) else comp
                left = available_points(curve, d)
                if left is None or left > 0:
                    return replace(sel, residue_size=comp.q**d)
        raise MissingPoint(f"no closed point of degree {d}")
    raise TypeError(f"not a point selection: {sel!r}")


# -- archimedean invariants -----------------------------------------------

def _characteristic(comp: SchemeExpr) -> int:
    if isinstance(comp, NumberRing):
        return 0
    return prime_power(comp.q)[0]


def archimedean_profile(expr: SchemeExpr) -> PlaceProfile:
    r1 = r2 = 0
    chars = []
    for comp in components(expr):
        chars.append(_characteristic(comp))
        if isinstance(comp, NumberRing):
            group = character_group(comp.field)
            if group.totally_real:
                r1 += group.degree
            else:
                r2 += group.degree // 2
    return PlaceProfile(r1, r2, tuple(chars))


def _check_weight(n: int) -> None:
    if n >= 0:
        raise NonNegativeWeight(f"weight n = {n} must be strictly negative")


def vanishing_order(expr: SchemeExpr, n: int) -> int:
    _check_weight(n)
    prof = archimedean_profile(expr)
    return prof.r1 + prof.r2 if n % 2 == 0 else prof.r2


def delta(expr: SchemeExpr, n: int) -> int:
    _check_weight(n)
    return archimedean_profile(expr).r1 if n % 2 == 0 else 0
