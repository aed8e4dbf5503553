"""Cohomological side: orders of H^i(X_et, Z^c(n)) and the predicted special value.

The quantity carried through every construction is the multiplier
M = |H^0| / (|H^-1_tors| |H^1|).  Individual orders are kept only when
they are supplied or forced by a trivial group in the localization
sequence; otherwise they become ``None`` while M stays exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Union

import mpmath

from .dirichlet import splitting_data
from .errors import (
    DSLSyntaxError,
    IncompleteProfile,
    InconsistentWithStructure,
    MalformedData,
    NonIntegralT1,
    OrderMismatch,
    RegulatorRequired,
    SchemeError,
    WeightMismatch,
)
from .numeric import Ball
from .scheme import (
    AffineLine,
    Curve,
    Disjoint,
    Glue,
    NumberRing,
    SchemeExpr,
    SpecFq,
    archimedean_profile,
    normalize,
    vanishing_order,
)
from .zeta import SpecialValue

Order = Optional[int]


def _mul(*xs: Order) -> Order:
    out = 1
    for x in xs:
        if x is None:
            return None
        out *= x
    return out


@dataclass(frozen=True)
class MotivicProfile:
    """Shape data for H^i(X_et, Z^c(n)).

    H^-1 is finitely generated of rank ``rank_minus1`` with torsion of
    order ``tors_minus1``; H^0 and H^1 are finite; for i >= 2 the group is
    (Z/2)^r1 when i and n have different parity and zero otherwise.
    """

    n: int
    rank_minus1: int = 0
    tors_minus1: Order = 1
    ord_H0: Order = 1
    ord_H1: Order = 1
    r1: int = 0
    multiplier: Optional[Fraction] = None

    def __post_init__(self):
        if self.n >= 0:
            raise ValueError("weight must be negative")
        for name in ("tors_minus1", "ord_H0", "ord_H1"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise InconsistentWithStructure(f"{name} = {v} must be positive")
        if self.rank_minus1 < 0 or self.r1 < 0:
            raise InconsistentWithStructure("ranks must be nonnegative")
        derived = None
        if None not in (self.tors_minus1, self.ord_H0, self.ord_H1):
            derived = Fraction(self.ord_H0, self.tors_minus1 * self.ord_H1)
        if self.multiplier is None:
            object.__setattr__(self, "multiplier", derived)
        elif derived is not None and derived != self.multiplier:
            raise InconsistentWithStructure(f"multiplier {self.multiplier} disagrees with orders ({derived})")
        if self.multiplier is not None and self.multiplier <= 0:
            raise InconsistentWithStructure("multiplier must be positive")

    @property
    def complete(self) -> bool:
        return None not in (self.tors_minus1, self.ord_H0, self.ord_H1)

    @property
    def delta(self) -> int:
        return self.r1 if self.n % 2 == 0 else 0

    def high_degree_order(self, i: int) -> int:
        """|H^i| for i >= 2."""
        if i < 2:
            raise ValueError("only degrees i >= 2 follow the 2-torsion pattern")
        return 2**self.r1 if (i - self.n) % 2 else 1

    def orders(self) -> tuple[Order, Order, Order]:
        return (self.tors_minus1, self.ord_H0, self.ord_H1)


# -- built-in base cases --------------------------------------------------

def finite_field_profile(q: int, n: int) -> MotivicProfile:
    return MotivicProfile(n, ord_H1=q ** (-n) - 1)


def affine_line_profile(q: int, n: int) -> MotivicProfile:
    return MotivicProfile(n, tors_minus1=q ** (1 - n) - 1)


def projective_line_profile(q: int, n: int) -> MotivicProfile:
    # projective bundle formula: the point contributes H^1, the twisted point H^-1
    return MotivicProfile(n, tors_minus1=q ** (1 - n) - 1, ord_H1=q ** (-n) - 1)


def zero_dim_profile(residue_sizes: Iterable[int], n: int) -> MotivicProfile:
    sizes = list(residue_sizes)
    if any(N < 2 for N in sizes):
        raise ValueError("residue field sizes must be at least 2")
    return MotivicProfile(n, ord_H1=_mul(*(N ** (-n) - 1 for N in sizes)))


# -- propagation ----------------------------------------------------------

def _same_weight(*profiles: MotivicProfile) -> int:
    ns = {p.n for p in profiles}
    if len(ns) > 1:
        raise WeightMismatch(f"profiles have weights {sorted(ns)}")
    return ns.pop()


def propagate_remove(px: MotivicProfile, z: MotivicProfile) -> MotivicProfile:
    """Profile of U = X - Z from those of X and of the closed zero-dimensional Z."""
    n = _same_weight(px, z)
    h1z = z.ord_H1
    mult = None if px.multiplier is None else px.multiplier * h1z
    # 0 -> H^0(X) -> H^0(U) -> H^1(Z) -> H^1(X) -> H^1(U) -> 0
    if h1z == 1:
        h0, h1 = px.ord_H0, px.ord_H1
    elif px.ord_H1 == 1:
        h0, h1 = _mul(px.ord_H0, h1z), 1
    else:
        h0 = h1 = None
    return MotivicProfile(n, px.rank_minus1, px.tors_minus1, h0, h1, px.r1, mult)


def propagate_union(profiles: Iterable[MotivicProfile], n: Optional[int] = None) -> MotivicProfile:
    profiles = list(profiles)
    if not profiles:
        if n is None:
            raise ValueError("the empty union needs an explicit weight")
        return MotivicProfile(n)
    w = _same_weight(*profiles)
    if n is not None and n != w:
        raise WeightMismatch(f"expected weight {n}, got {w}")
    mult = Fraction(1)
    for p in profiles:
        mult = None if mult is None or p.multiplier is None else mult * p.multiplier
    return MotivicProfile(
        w,
        sum(p.rank_minus1 for p in profiles),
        _mul(*(p.tors_minus1 for p in profiles)),
        _mul(*(p.ord_H0 for p in profiles)),
        _mul(*(p.ord_H1 for p in profiles)),
        sum(p.r1 for p in profiles),
        mult,
    )


def propagate_glue(p1: MotivicProfile, p2: MotivicProfile, N: int) -> MotivicProfile:
    """Identify one point of size N on each side: two points become one."""
    n = _same_weight(p1, p2)
    if N < 2:
        raise ValueError("residue field size must be at least 2")
    a = N ** (-n) - 1
    both = propagate_union([p1, p2])
    mult = None if both.multiplier is None else both.multiplier * a
    if p1.ord_H1 == 1 and p2.ord_H1 == 1:
        h0, h1 = _mul(both.ord_H0, a), 1
    elif a == 1:
        h0, h1 = both.ord_H0, both.ord_H1
    else:
        h0 = h1 = None
    return MotivicProfile(n, both.rank_minus1, both.tors_minus1, h0, h1, both.r1, mult)


# -- base data ------------------------------------------------------------

@dataclass(frozen=True)
class BaseDataRecord:
    scheme: SchemeExpr
    n: int
    tors_minus1: int
    ord_H0: int
    ord_H1: int
    provenance: str = ""

    def profile(self) -> MotivicProfile:
        prof = archimedean_profile(self.scheme)
        return MotivicProfile(
            self.n,
            vanishing_order(self.scheme, self.n),
            self.tors_minus1,
            self.ord_H0,
            self.ord_H1,
            prof.r1,
        )


def _as_int(raw, key: str, where: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise MalformedData(f"{where}: {key} must be an integer string, got {raw!r}")
    try:
        return int(raw)
    except ValueError:
        raise MalformedData(f"{where}: {key} = {raw!r} is not an integer") from None


def check_record(rec: BaseDataRecord) -> None:
    """Structural constraints every record must satisfy."""
    vanishing_order(rec.scheme, rec.n)  # weight check
    for key in ("tors_minus1", "ord_H0", "ord_H1"):
        if getattr(rec, key) < 1:
            raise InconsistentWithStructure(f"{key} must be positive")
    if isinstance(rec.scheme, NumberRing):
        r1 = archimedean_profile(rec.scheme).r1
        expected = 2**r1 if rec.n % 2 == 0 else 1
        if not rec.scheme.removed and rec.ord_H1 != expected:
            raise InconsistentWithStructure(
                f"H^1 of a maximal order at n = {rec.n} has order {expected}, record says {rec.ord_H1}"
            )
        # H^1(X) surjects onto H^1(U)
        if rec.scheme.removed and expected % rec.ord_H1:
            raise InconsistentWithStructure(f"|H^1| = {rec.ord_H1} must divide {expected}")


def parse_records(payload, source: str = "<data>") -> list[BaseDataRecord]:
    from .dsl import parse

    if not isinstance(payload, list):
        raise MalformedData(f"{source}: expected a JSON array of records")
    out = []
    for i, entry in enumerate(payload):
        where = f"{source}[{i}]"
        if not isinstance(entry, dict):
            raise MalformedData(f"{where}: record must be an object")
        missing = {"scheme", "n", "tors_minus1", "ord_H0", "ord_H1"} - entry.keys()
        if missing:
            raise MalformedData(f"{where}: missing {', '.join(sorted(missing))}")
        if not isinstance(entry["scheme"], str):
            raise MalformedData(f"{where}: scheme must be a DSL string")
        try:
            scheme = parse(entry["scheme"])
        except (DSLSyntaxError, SchemeError) as exc:
            raise MalformedData(f"{where}: {exc}") from exc
        n = entry["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n >= 0:
            raise MalformedData(f"{where}: n must be a negative integer")
        rec = BaseDataRecord(
            scheme,
            n,
            _as_int(entry["tors_minus1"], "tors_minus1", where),
            _as_int(entry["ord_H0"], "ord_H0", where),
            _as_int(entry["ord_H1"], "ord_H1", where),
            str(entry.get("provenance", "")),
        )
        check_record(rec)
        out.append(rec)
    return out


def load_base_data(path: Union[str, Path]) -> list[BaseDataRecord]:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedData(f"{path}: {exc}") from exc
    return parse_records(payload, str(path))


def shipped_records() -> list[BaseDataRecord]:
    text = resources.files("zetacheck").joinpath("data/spec_z.json").read_text(encoding="utf-8")
    return parse_records(json.loads(text), "spec_z.json")


@dataclass
class BaseData:
    """Records keyed by (normalized scheme, n); later additions must agree with earlier ones."""

    records: dict = field(default_factory=dict)

    @classmethod
    def default(cls, extra_paths: Iterable[Union[str, Path]] = ()) -> BaseData:
        data = cls()
        data.extend(shipped_records())
        for p in extra_paths:
            data.extend(load_base_data(p))
        return data

    def extend(self, records: Iterable[BaseDataRecord]) -> None:
        for rec in records:
            key = (rec.scheme, rec.n)
            old = self.records.get(key)
            if old is not None and (old.tors_minus1, old.ord_H0, old.ord_H1) != (
                rec.tors_minus1,
                rec.ord_H0,
                rec.ord_H1,
            ):
                raise InconsistentWithStructure(f"conflicting records for {key}")
            self.records[key] = rec

    def lookup(self, expr: SchemeExpr, n: int) -> Optional[MotivicProfile]:
        rec = self.records.get((normalize(expr), n))
        return None if rec is None else rec.profile()

    def __len__(self) -> int:
        return len(self.records)


def lookup(expr: SchemeExpr, n: int, data: Optional[BaseData] = None) -> Optional[MotivicProfile]:
    return (data or BaseData.default()).lookup(expr, n)


# -- devissage ------------------------------------------------------------

def _fiber_sizes(ring: NumberRing, primes) -> list[int]:
    sizes = []
    for p in sorted(primes):
        _, f, g = splitting_data(ring.field, p)
        sizes.extend([p**f] * g)
    return sizes


def _number_ring_profile(expr: NumberRing, n: int, data: BaseData) -> Optional[MotivicProfile]:
    direct = data.lookup(expr, n)
    if direct is not None:
        return direct
    # largest recorded open containing expr, then remove the remaining fibers
    best = None
    for (scheme, m), rec in data.records.items():
        if m == n and isinstance(scheme, NumberRing) and scheme.field == expr.field and scheme.removed <= expr.removed:
            if best is None or len(scheme.removed) > len(best.scheme.removed):
                best = rec
    if best is None:
        return None
    z = zero_dim_profile(_fiber_sizes(expr, expr.removed - best.scheme.removed), n)
    return propagate_remove(best.profile(), z)


def scheme_profile(expr: SchemeExpr, n: int, data: Optional[BaseData] = None) -> Optional[MotivicProfile]:
    """Profile of ``expr`` assembled from base cases, records and the propagation laws.

    Returns None when some number-ring or curve component has no usable record.
    """
    data = data if data is not None else BaseData.default()
    expr = normalize(expr)
    vanishing_order(expr, n)  # weight check
    direct = data.lookup(expr, n)
    if direct is not None:
        return direct
    if isinstance(expr, NumberRing):
        return _number_ring_profile(expr, n, data)
    if isinstance(expr, SpecFq):
        return finite_field_profile(expr.q, n)
    if isinstance(expr, AffineLine):
        return affine_line_profile(expr.q, n)
    if isinstance(expr, Curve):
        base = Curve(expr.q, expr.numerator)
        if expr.numerator == (1,):
            prof = projective_line_profile(expr.q, n)
        else:
            prof = data.lookup(base, n)
            if prof is None:
                return None
        if expr.removed:
            prof = propagate_remove(prof, zero_dim_profile([expr.q**d for d in expr.removed], n))
        return prof
    if isinstance(expr, Disjoint):
        parts = [scheme_profile(p, n, data) for p in expr.parts]
        if any(p is None for p in parts):
            return None
        return propagate_union(parts, n)
    if isinstance(expr, Glue):
        left = scheme_profile(expr.left, n, data)
        right = scheme_profile(expr.right, n, data)
        if left is None or right is None:
            return None
        return propagate_glue(left, right, expr.residue_size)
    raise TypeError(f"not a scheme expression: {expr!r}")


# -- equivariant and Weil-etale profiles -----------------------------------

@dataclass(frozen=True)
class EquivariantProfile:
    """G_R-equivariant cohomology of X(C) with coefficients (2 pi i)^n Z.

    H^0_c has rank ``h0c_rank``; the Tate groups are (Z/2)^r1, of order
    ``tate_order``, in degrees i with i = ``parity`` mod 2 and vanish in
    the other parity.
    """

    n: int
    h0c_rank: int
    tate_order: int
    parity: int

    def tate_group_order(self, i: int) -> int:
        return self.tate_order if i % 2 == self.parity else 1


def equivariant_profile(expr: SchemeExpr, n: int) -> EquivariantProfile:
    d = vanishing_order(expr, n)
    r1 = archimedean_profile(expr).r1
    return EquivariantProfile(n, d, 2**r1, n % 2)


@dataclass(frozen=True)
class WeilEtaleGroup:
    rank: int = 0
    torsion: int = 1

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and self.torsion == 1


@dataclass(frozen=True)
class WeilEtaleProfile:
    """H^i_{W,c}(X, Z(n)) for i = 1, 2, 3; every other degree vanishes.

    Only ranks and torsion orders are stored.  In degree 1 the torsion is
    |T_1| = |H^1| / 2^delta; ``h1_extension_order`` is the order 2^delta of
    the Tate-cohomology term in the extension, which need not split.
    """

    n: int
    groups: dict
    h1_extension_order: int

    def group(self, i: int) -> WeilEtaleGroup:
        return self.groups.get(i, WeilEtaleGroup())

    def euler_rank_sum(self) -> int:
        return sum((-1) ** i * i * g.rank for i, g in self.groups.items())


def weil_etale_profile(m: MotivicProfile, n: Optional[int] = None) -> WeilEtaleProfile:
    if n is not None and n != m.n:
        raise WeightMismatch(f"profile has weight {m.n}, asked for {n}")
    if not m.complete:
        raise IncompleteProfile("Weil-etale profile needs all of |H^-1_tors|, |H^0|, |H^1|")
    ext = 2**m.delta
    if m.ord_H1 % ext:
        raise NonIntegralT1(f"2^delta = {ext} does not divide |H^1| = {m.ord_H1}")
    d = m.rank_minus1
    groups = {
        1: WeilEtaleGroup(d, m.ord_H1 // ext),
        2: WeilEtaleGroup(d, m.ord_H0),
        3: WeilEtaleGroup(0, m.tors_minus1),
    }
    return WeilEtaleProfile(m.n, groups, ext)


# -- special value prediction ---------------------------------------------

ONE = "one"
SYMBOLIC = "symbolic"


@dataclass(frozen=True)
class Prediction:
    """|zeta*(X, n)| = cofactor * R.  ``value`` is None while R is symbolic."""

    order: int
    cofactor: Fraction
    regulator: Union[str, Ball]
    value: Union[Fraction, Ball, None]

    @property
    def mode(self) -> str:
        if self.value is None:
            return "symbolic"
        return "exact" if isinstance(self.value, Fraction) else "numeric"

    def as_special_value(self) -> SpecialValue:
        if self.value is None:
            raise RegulatorRequired("the regulator is symbolic")
        return SpecialValue(self.order, self.value, False, self.mode)


def predicted_special_value(m: MotivicProfile, n: Optional[int] = None, regulator: Union[str, Ball] = ONE) -> Prediction:
    if n is not None and n != m.n:
        raise WeightMismatch(f"profile has weight {m.n}, asked for {n}")
    if m.multiplier is None:
        raise IncompleteProfile("the multiplier is unknown")
    cofactor = 2**m.delta * m.multiplier
    d = m.rank_minus1
    if isinstance(regulator, Ball):
        with mpmath.workprec(mpmath.mp.prec + 64):
            return Prediction(d, cofactor, regulator, regulator * cofactor)
    if regulator == ONE:
        if d > 0:
            raise RegulatorRequired(f"d_n = {d} > 0: the regulator is not 1")
        return Prediction(d, cofactor, ONE, cofactor)
    if regulator == SYMBOLIC:
        return Prediction(d, cofactor, SYMBOLIC, None if d > 0 else cofactor)
    raise ValueError(f"unknown regulator {regulator!r}")


def infer_regulator(analytic: SpecialValue, m: MotivicProfile, n: Optional[int] = None) -> Ball:
    """R = |leading| / (2^delta M), the value that makes both sides agree."""
    if n is not None and n != m.n:
        raise WeightMismatch(f"profile has weight {m.n}, asked for {n}")
    d = m.rank_minus1
    if d == 0:
        raise OrderMismatch("d_n = 0: the regulator is 1 by convention, nothing to infer")
    if analytic.order != d:
        raise OrderMismatch(f"analytic order {analytic.order} differs from d_n = {d}")
    if m.multiplier is None:
        raise IncompleteProfile("the multiplier is unknown")
    cofactor = 2**m.delta * m.multiplier
    lead = analytic.leading
    if isinstance(lead, Fraction):
        lead = Ball.exact(lead)
    with mpmath.workprec(mpmath.mp.prec + 64):
        return abs(lead) / cofactor
