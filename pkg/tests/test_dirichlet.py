from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import mpmath
import pytest
import sympy

import oracles
from zetacheck.arith import bernoulli_numbers
from zetacheck.cyclotomic import CyclotomicNumber
from zetacheck.dirichlet import (
    DirichletCharacter,
    character_group,
    characters_mod,
    gauss_sum,
    generalized_bernoulli,
    l_derivative_negative,
    l_value_negative,
    splitting_data,
    vanishes_at,
)
from zetacheck.errors import NotAVanishingPoint
from zetacheck.fields import AbelianByModulus, Cyclotomic, CyclotomicReal, Quadratic, RationalField
from zetacheck.scheme import NumberRing, vanishing_order

GRID = [
    RationalField(),
    Quadratic(-4),
    Quadratic(-3),
    Quadratic(5),
    Quadratic(8),
    Quadratic(-20),
    Quadratic(13),
    Cyclotomic(5),
    Cyclotomic(7),
    Cyclotomic(8),
    Cyclotomic(12),
    CyclotomicReal(7),
    CyclotomicReal(11),
    AbelianByModulus(13, (5,)),
]


def quad_char(D):
    (chi,) = [c for c in character_group(Quadratic(D)) if not c.is_trivial]
    return chi


def test_character_groups():
    assert character_group(RationalField()).chars == (DirichletCharacter.trivial(),)
    g = character_group(Quadratic(-4))
    assert len(g) == 2
    chi = quad_char(-4)
    assert chi.modulus == 4 and chi.parity == 1
    assert len(character_group(Cyclotomic(5))) == 4
    assert {c.modulus for c in character_group(Cyclotomic(5))} == {1, 5}


@pytest.mark.parametrize("field", GRID, ids=repr)
def test_group_closed_and_primitive(field):
    g = character_group(field)
    chars = set(g.chars)
    for a in g.chars:
        assert a.is_primitive
        assert a.conjugate().primitive in chars
        for b in g.chars:
            assert (a * b).primitive in chars


def test_quadratic_characters_against_kronecker():
    for D in (-4, -3, 5, 8, -8, 12, -20, 13):
        chi = quad_char(D)
        for a in range(1, 60):
            assert chi(a) == oracles.kronecker(D, a), (D, a)


def test_gaussian_euler_factors_match_norm_search():
    chi = quad_char(-4)
    for p in sympy.primerange(2, 51):
        # Euler factor (1 - p^-s)(1 - chi(p) p^-s): chi(p) = 1 split, -1 inert, 0 ramified
        value = chi(p).to_fraction()
        expected = {(1, 1, 2): 1, (1, 2, 1): -1, (2, 1, 1): 0}[oracles.gaussian_splitting(p)]
        assert value == expected, p
        assert splitting_data(Quadratic(-4), p) == oracles.gaussian_splitting(p)


def test_splitting_examples():
    assert splitting_data(Quadratic(-4), 5) == (1, 1, 2)
    assert splitting_data(Cyclotomic(5), 2) == (1, oracles.order_mod(2, 5), 1) == (1, 4, 1)
    assert splitting_data(Quadratic(-4), 2) == (2, 1, 1)


@pytest.mark.parametrize("D", [5, -3, 8, -7, 13, -20])
def test_quadratic_splitting_odd_primes(D):
    for p in sympy.primerange(3, 40):
        assert splitting_data(Quadratic(D), p) == oracles.quadratic_splitting(D, p)


def test_cyclotomic_splitting():
    for m in (5, 7, 8, 12):
        for p in sympy.primerange(2, 30):
            e, f, g = splitting_data(Cyclotomic(m), p)
            deg = len(character_group(Cyclotomic(m)))
            assert e * f * g == deg
            if m % p:
                assert e == 1 and f == oracles.order_mod(p, m)


def test_multiplicativity_and_parity():
    for m in (5, 7, 8, 9, 12):
        for chi in characters_mod(m):
            for u in range(1, m):
                for v in range(1, m):
                    if sympy.gcd(u * v, m) == 1:
                        assert chi(u * v) == chi(u) * chi(v)
            assert chi(-1) == (-1) ** chi.parity


def test_generalized_bernoulli_examples():
    assert generalized_bernoulli(4, DirichletCharacter.trivial()) == Fraction(-1, 30)
    assert generalized_bernoulli(2, quad_char(5)) == Fraction(4, 5)
    assert generalized_bernoulli(2, quad_char(-4)) == 0


def test_b2_chi5_brute_force():
    brute = oracles.generalized_bernoulli_brute(2, 5, lambda a: oracles.kronecker(5, a))
    with mpmath.workdps(60):
        assert abs(brute - mpmath.mpf(4) / 5) < mpmath.mpf(10) ** -40
    assert generalized_bernoulli(2, quad_char(5)) == Fraction(4, 5)


@pytest.mark.parametrize("k", range(2, 16))
def test_trivial_character_gives_classical_bernoulli(k):
    assert generalized_bernoulli(k, DirichletCharacter.trivial()) == oracles.bernoulli_recurrence(k)
    assert generalized_bernoulli(k, DirichletCharacter.trivial()) == bernoulli_numbers(k)[k]


def test_generalized_bernoulli_against_brute_force_complex():
    for m in (5, 7, 8, 12):
        for chi in characters_mod(m):
            chi = chi.primitive
            for k in (2, 3, 4):
                brute = oracles.generalized_bernoulli_brute(k, chi.modulus, lambda a: complex(chi.complex_value(a)))
                assert abs(generalized_bernoulli(k, chi).to_complex() - brute) < 1e-12


def test_l_values():
    assert l_value_negative(-3, DirichletCharacter.trivial()) == Fraction(1, 120)
    assert l_value_negative(-1, quad_char(5)) == Fraction(-2, 5)
    assert l_value_negative(-2, quad_char(5)) == 0
    assert l_value_negative(-2, DirichletCharacter.trivial()) == 0


@pytest.mark.parametrize("field", GRID, ids=repr)
def test_parity_vanishing_count_is_vanishing_order(field):
    for n in range(-1, -7, -1):
        zeros = sum(1 for chi in character_group(field) if l_value_negative(n, chi) == 0)
        assert zeros == sum(vanishes_at(n, chi) for chi in character_group(field))
        assert zeros == vanishing_order(NumberRing(field), n)


@pytest.mark.parametrize("field", [Cyclotomic(5), Cyclotomic(7), CyclotomicReal(7), Cyclotomic(12)], ids=repr)
def test_galois_stability_and_rational_product(field):
    from math import gcd

    for n in (-1, -2, -3):
        values = [l_value_negative(n, chi) for chi in character_group(field) if not vanishes_at(n, chi)]
        N = 1
        for v in values:
            N = N * v.order // gcd(N, v.order)
        lifted = sorted((repr(v.lift(N)) for v in values))
        for a in range(1, N):
            if gcd(a, N) == 1:
                assert sorted(repr(v.lift(N).galois(a)) for v in values) == lifted
        prod = CyclotomicNumber.rational(1)
        for v in values:
            prod = prod * v
        assert prod.is_rational()


def test_gauss_sums():
    assert gauss_sum(DirichletCharacter.trivial()).contains(1)
    tau = gauss_sum(quad_char(-4))
    assert tau.contains(mpmath.mpc(0, 2))
    for chi in characters_mod(5):
        if chi.is_primitive:
            t = gauss_sum(chi, 128)
            with mpmath.workprec(160):
                assert abs(abs(t.mid) - mpmath.sqrt(5)) <= t.rad + mpmath.mpf(2) ** -120


def test_gauss_sum_modulus_squared_is_conductor():
    for m in (7, 8, 12, 13):
        for chi in characters_mod(m):
            t = gauss_sum(chi, 96)
            with mpmath.workprec(128):
                assert abs(abs(t.mid) ** 2 - chi.conductor) < 1e-25


def test_l_derivative_at_minus_two_matches_zeta3():
    with mpmath.workdps(60):
        target = -oracles.zeta3_apery(120) / (4 * mpmath.pi**2)
        ball = l_derivative_negative(-2, DirichletCharacter.trivial(), 128)
        assert abs(ball.mid - target) < mpmath.mpf(10) ** -35


def test_l_derivative_chi4_matches_numeric_differentiation():
    with mpmath.workdps(60):
        h = mpmath.mpf(10) ** -20
        oracle = oracles.central_difference(oracles.beta_euler, mpmath.mpf(-1), h)
        ball = l_derivative_negative(-1, quad_char(-4), 128)
        assert abs(mpmath.re(ball.mid) - oracle) < mpmath.mpf(10) ** -10 * abs(oracle)
        assert abs(mpmath.im(ball.mid)) <= ball.rad


def test_l_derivative_complex_character_against_mpmath():
    chi = [c for c in character_group(Cyclotomic(5)) if c.parity == 1][0]
    ball = l_derivative_negative(-1, chi, 96)
    with mpmath.workdps(40):
        chi_vals = [chi.complex_value(a) for a in range(5)]
        diff = mpmath.diff(lambda s: mpmath.dirichlet(s, chi_vals), -1)
        assert abs(ball.mid - diff) < 1e-25


def test_l_derivative_refuses_nonvanishing_point():
    with pytest.raises(NotAVanishingPoint):
        l_derivative_negative(-3, DirichletCharacter.trivial(), 128)


def test_caches_are_thread_safe():
    chars = [c.primitive for m in (5, 7, 8) for c in characters_mod(m)]
    generalized_bernoulli.cache_clear()
    serial = [generalized_bernoulli(3, c) for c in chars]
    generalized_bernoulli.cache_clear()
    with ThreadPoolExecutor(8) as pool:
        parallel = list(pool.map(lambda c: generalized_bernoulli(3, c), chars))
    assert serial == parallel
