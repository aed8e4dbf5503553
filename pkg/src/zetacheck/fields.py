"""Abelian number fields, presented by character-theoretic data."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Union

from .arith import is_fundamental_discriminant
from .errors import InvalidField


@dataclass(frozen=True)
class RationalField:
    pass


@dataclass(frozen=True)
class Quadratic:
    D: int


@dataclass(frozen=True)
class Cyclotomic:
    m: int


@dataclass(frozen=True)
class CyclotomicReal:
    m: int


@dataclass(frozen=True)
class AbelianByModulus:
    """Fixed field of the subgroup H of (Z/m)^* inside Q(zeta_m)."""

    m: int
    H: tuple[int, ...] = ()


FieldSpec = Union[RationalField, Quadratic, Cyclotomic, CyclotomicReal, AbelianByModulus]


def validate_field(field: FieldSpec) -> FieldSpec:
    """Check the presentation and return its canonical form."""
    if isinstance(field, RationalField):
        return field
    if isinstance(field, Quadratic):
        if not is_fundamental_discriminant(field.D):
            raise InvalidField(f"{field.D} is not a fundamental discriminant")
        return field
    if isinstance(field, (Cyclotomic, CyclotomicReal)):
        if field.m < 3 or field.m % 4 == 2:
            raise InvalidField(f"cyclotomic modulus {field.m} must be >= 3 and not 2 mod 4")
        return field
    if isinstance(field, AbelianByModulus):
        m = field.m
        if m < 1:
            raise InvalidField(f"modulus {m} must be positive")
        gens = set()
        for h in field.H:
            if gcd(h, m) != 1:
                raise InvalidField(f"generator {h} is not a unit mod {m}")
            r = h % m
            if r != 1 % m:
                gens.add(r)
        return AbelianByModulus(m, tuple(sorted(gens)))
    raise InvalidField(f"unknown field presentation {field!r}")
