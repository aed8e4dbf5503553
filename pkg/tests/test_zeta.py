from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt

import mpmath
import pytest

import gen
from zetacheck.dirichlet import DirichletCharacter, character_group
from zetacheck.dsl import parse
from zetacheck.errors import ExactUnavailable, InternalInconsistency, NonNegativeWeight
from zetacheck.fields import Cyclotomic, CyclotomicReal, Quadratic, RationalField
from zetacheck.scheme import AffineLine, Curve, Disjoint, NumberRing, SpecFq, normalize, vanishing_order
from zetacheck.zeta import (
    CurveFactor,
    EulerAdjust,
    LFactor,
    ZetaFactorization,
    evaluate,
    factorize,
    rational_factor_value,
    special_value,
    zeta_order,
)

GLUE10 = "glue(remove(SpecZ;2)@p={p}, A1({p})@deg=1)"
TRIVIAL = DirichletCharacter.trivial()


def test_glued_scheme_factorization():
    f = factorize(parse(GLUE10.format(p=3)))
    expected = ZetaFactorization(
        [LFactor(TRIVIAL), EulerAdjust(2, 1), CurveFactor(3, (1,)), EulerAdjust(3, 1), EulerAdjust(3, 1)]
    )
    assert f == expected


def test_glued_scheme_closed_form():
    # (1 - p^-s)(1 - 2^-s) zeta(s) / (1 - p^(1-s))
    for p in (3, 5, 7):
        for n in (-1, -3, -5):
            v = special_value(factorize(parse(GLUE10.format(p=p))), n).leading
            zeta_n = special_value(factorize(parse("SpecZ")), n).leading
            closed = Fraction(1 - p ** (-n)) * (1 - 2 ** (-n)) * zeta_n / (1 - p ** (1 - n))
            assert v == closed


def test_union_and_cancellation():
    f = factorize(normalize(Disjoint((SpecFq(2), SpecFq(3)))))
    assert f.factors == (EulerAdjust(2, -1), EulerAdjust(3, -1))
    assert ZetaFactorization([EulerAdjust(5, 1), EulerAdjust(5, -1)]).factors == ()


def test_gaussian_removal_factorization():
    f = factorize(parse("remove(SpecOF(Quad(-4)); 5)"))
    (chi,) = [c for c in character_group(Quadratic(-4)) if not c.is_trivial]
    assert f == ZetaFactorization([LFactor(TRIVIAL), LFactor(chi), EulerAdjust(5, 1), EulerAdjust(5, 1)])


def test_special_value_examples():
    assert special_value(factorize(parse("SpecZ")), -3) .leading == Fraction(1, 120)
    v = special_value(factorize(parse("SpecF(2)")), -1)
    assert (v.order, v.leading) == (0, Fraction(-1))
    v = special_value(factorize(parse(GLUE10.format(p=3))), -3)
    assert (v.order, v.leading, v.mode) == (0, Fraction(-91, 4800), "exact")


def test_zeta_order_examples():
    assert zeta_order(factorize(parse("SpecZ")), -2) == 1
    assert zeta_order(factorize(parse("SpecOF(Cyclo(5))")), -1) == 2
    for text in ("SpecF(7)", "A1(4)", "Curve(2; 1,1,2)", "union(SpecF(2), A1(3))"):
        for n in range(-1, -7, -1):
            assert zeta_order(factorize(parse(text)), n) == 0


ORDER_GRID = [
    RationalField(),
    Quadratic(-4),
    Quadratic(5),
    Quadratic(-8),
    Quadratic(13),
    Quadratic(-15),
    Cyclotomic(5),
    Cyclotomic(7),
    Cyclotomic(8),
    Cyclotomic(12),
    CyclotomicReal(7),
]


@pytest.mark.parametrize("field", ORDER_GRID, ids=repr)
def test_order_agreement_grid(field):
    for n in range(-1, -7, -1):
        X = NumberRing(field)
        assert zeta_order(factorize(X), n) == vanishing_order(X, n)
    for curve in (AffineLine(3), Curve(2, (1,)), Curve(2, (1, 1, 2))):
        for n in range(-1, -7, -1):
            assert zeta_order(factorize(curve), n) == vanishing_order(curve, n) == 0


def test_multiplicativity_exact():
    rng = random.Random(5)
    for _ in range(200):
        a = gen.random_expr(rng, 2, fields=(RationalField(), CyclotomicReal(7), Quadratic(5)))
        b = gen.random_expr(rng, 2, fields=(RationalField(), CyclotomicReal(7), Quadratic(5)))
        both = normalize(Disjoint((a, b)))
        for n in (-1, -3):
            va, vb, vab = (evaluate(x, n) for x in (a, b, both))
            assert vab.order == va.order + vb.order
            if vab.mode == "exact":
                assert vab.leading == va.leading * vb.leading


def test_remove_fiber_then_reglue_restores_factorization():
    for text, p in [("SpecZ", 3), ("SpecOF(Quad(-4))", 3), ("SpecOF(Cyclo(5))", 11)]:
        X = parse(text)
        U = parse(f"remove({text}; {p})")
        from zetacheck.dirichlet import splitting_data

        _, f, g = splitting_data(X.field, p)
        # gluing in g points of norm p^f undoes the removal: each adds (1 - N^-s)^-1
        back = factorize(U) + ZetaFactorization([EulerAdjust(p**f, -1)] * g)
        assert back == factorize(X)


def test_exact_and_numeric_agree():
    rng = random.Random(9)
    for _ in range(60):
        e = gen.random_expr(rng, 2, fields=(RationalField(), Quadratic(5), CyclotomicReal(7), Quadratic(-4)))
        for n in (-1, -2, -3):
            f = factorize(e)
            if zeta_order(f, n):
                continue
            exact = special_value(f, n, "exact")
            num = special_value(f, n, "numeric", 128)
            assert num.leading.contains(exact.leading)
            assert num.leading.rad <= abs(num.leading.mid) * mpmath.mpf(2) ** -128


def test_numeric_mode_bounds():
    v = special_value(factorize(parse("SpecOF(Cyclo(5))")), -2, "numeric", 200)
    assert v.order == 2
    assert v.leading.excludes_zero()
    assert v.leading.rad <= abs(v.leading.mid) * mpmath.mpf(2) ** -200


def test_exact_refuses_vanishing_factor():
    with pytest.raises(ExactUnavailable):
        special_value(factorize(parse("SpecZ")), -2, "exact")


def test_weight_must_be_negative():
    with pytest.raises(NonNegativeWeight):
        special_value(factorize(parse("SpecZ")), 0)
    with pytest.raises(NonNegativeWeight):
        zeta_order(factorize(parse("SpecZ")), 1)


def test_incomplete_galois_orbit_is_caught():
    cubic = [c for c in character_group(CyclotomicReal(7)) if not c.is_trivial]
    with pytest.raises(InternalInconsistency):
        special_value(ZetaFactorization([LFactor(cubic[0])]), -1, "exact")


def _random_weil_numerator(rng, q, g):
    P = [1]
    bound = isqrt(4 * q)
    for _ in range(g):
        a = rng.randint(-bound, bound)
        factor = [1, -a, q]
        out = [0] * (len(P) + 2)
        for i, x in enumerate(P):
            for j, y in enumerate(factor):
                out[i + j] += x * y
        P = out
    return tuple(P)


def test_curve_factor_nonvanishing():
    rng = random.Random(2)
    for _ in range(300):
        q = rng.choice((2, 3, 4, 5, 7, 9, 11))
        P = _random_weil_numerator(rng, q, rng.randint(1, 3))
        for n in range(-1, -7, -1):
            assert rational_factor_value(CurveFactor(q, P), n) != 0


def test_sign_drop_keeps_full_precision():
    v = special_value(factorize(parse("SpecZ")), -2, "numeric", 160)
    a = v.absolute()
    assert v.leading.mid < 0
    with mpmath.workprec(400):
        assert a.mid == -v.leading.mid
        assert abs(-a).mid == a.mid
