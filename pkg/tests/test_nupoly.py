"""Polynomials and rational functions in the deformation parameter."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpstar.nupoly import (
    NRF_ONE,
    NRF_ZERO,
    NU,
    NU_ONE,
    NU_ZERO,
    NuPolynomial,
    NuRationalFunction,
    nu_pochhammer,
    poly_eval,
)
from cpstar.scalars import GaussRational

small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=8)
polys = st.builds(
    NuPolynomial,
    st.lists(st.builds(GaussRational, small_rationals, small_rationals), max_size=6),
)


def test_trailing_zeros_are_trimmed():
    assert NuPolynomial((1, 2, 0, 0)).coeffs == (GaussRational(1), GaussRational(2))
    assert NuPolynomial((0, 0)).is_zero()
    assert NuPolynomial().degree == -1


def test_constant_and_power_constructors():
    assert NuPolynomial.constant(Fraction(2, 3)).coeffs == (GaussRational(Fraction(2, 3)),)
    cubic = NuPolynomial.nu_power(3, 5)
    assert cubic.degree == 3
    assert cubic.coefficient(3) == GaussRational(5)
    assert cubic.coefficient(0) == GaussRational(0)
    with pytest.raises(ValueError):
        NuPolynomial.nu_power(-1)


def test_addition_and_multiplication():
    p = NuPolynomial((1, 1))  # 1 + nu
    q = NuPolynomial((1, -1))  # 1 - nu
    assert p + q == NuPolynomial((2,))
    assert p * q == NuPolynomial((1, 0, -1))
    assert p * 2 == NuPolynomial((2, 2))
    assert Fraction(1, 2) * p == NuPolynomial((Fraction(1, 2), Fraction(1, 2)))
    assert -p == NuPolynomial((-1, -1))


def test_shift_multiplies_by_nu_powers():
    p = NuPolynomial((2, 3))
    assert p.shift(2) == NuPolynomial((0, 0, 2, 3))
    assert p.shift(0) == p
    assert NU_ZERO.shift(5) == NU_ZERO


def test_evaluate_horner():
    p = NuPolynomial((1, -3, 2))  # (1 - nu)(1 - 2 nu)
    assert p.evaluate(Fraction(1, 2)) == GaussRational(0)
    assert p.evaluate(0) == GaussRational(1)
    assert p.evaluate(GaussRational(0, 1)) == GaussRational(-1, -3)
    assert poly_eval(p, 1) == GaussRational(0)


def test_monic_normalization():
    p = NuPolynomial((2, 4))
    assert p.monic() == NuPolynomial((Fraction(1, 2), 1))
    assert NU_ZERO.monic() == NU_ZERO


def test_divmod_exact_division():
    product = NuPolynomial((1, -3, 2))
    q, r = divmod(product, NuPolynomial((1, -1)))
    assert r.is_zero()
    assert q == NuPolynomial((1, -2))
    with pytest.raises(ZeroDivisionError):
        divmod(product, NU_ZERO)


@given(polys, polys)
def test_divmod_reconstructs(p, d):
    if d.is_zero():
        return
    q, r = divmod(p, d)
    assert q * d + r == p
    assert r.is_zero() or r.degree < d.degree


def test_pochhammer_base_cases():
    assert nu_pochhammer(0) == NU_ONE
    assert nu_pochhammer(1) == NU_ONE
    assert nu_pochhammer(2) == NuPolynomial((1, -1))
    assert nu_pochhammer(3) == NuPolynomial((1, -3, 2))
    with pytest.raises(ValueError):
        nu_pochhammer(-1)


def test_pochhammer_recurrence():
    for k in range(1, 8):
        step = NuPolynomial((1, -k))  # 1 - k nu
        assert nu_pochhammer(k + 1) == nu_pochhammer(k) * step


def test_pochhammer_vanishing_at_reciprocal_integers():
    for K in range(1, 6):
        alpha = Fraction(1, K)
        for k in range(0, K + 4):
            value = poly_eval(nu_pochhammer(k), alpha)
            if k >= K + 1:
                assert not value, (K, k)
            else:
                assert value, (K, k)


def test_pochhammer_top_value_at_reciprocal():
    # at nu = 1/K the weight of the top level equals K!/K^K
    for K in range(1, 7):
        expected = GaussRational(Fraction(factorial(K), K**K))
        assert poly_eval(nu_pochhammer(K), Fraction(1, K)) == expected


def test_rational_function_normalizes_common_factors():
    num = NU * NuPolynomial((1, -1))  # nu (1 - nu)
    den = NuPolynomial((1, -1))  # 1 - nu; becomes nu - 1 when made monic
    assert NuRationalFunction(num, den) == NuRationalFunction(NU)


def test_rational_function_monic_denominator():
    f = NuRationalFunction(NU_ONE, NuPolynomial((-2, 2)))
    assert f.den.leading() == GaussRational(1)
    assert f.evaluate(0) == GaussRational(Fraction(-1, 2))


def test_rational_function_arithmetic():
    half = NuRationalFunction(NU_ONE, NuPolynomial((2,)))
    nu_frac = NuRationalFunction(NU)
    assert half + half == NRF_ONE
    assert nu_frac * nu_frac == NuRationalFunction(NU * NU)
    assert (nu_frac / nu_frac) == NRF_ONE
    assert nu_frac - nu_frac == NRF_ZERO
    with pytest.raises(ZeroDivisionError):
        nu_frac / NRF_ZERO
    with pytest.raises(ZeroDivisionError):
        NuRationalFunction(NU_ONE, NU_ZERO)


def test_rational_function_evaluate():
    f = NuRationalFunction(NuPolynomial((0, 1)), NuPolynomial((1, -1)))  # nu/(1-nu)
    assert f.evaluate(Fraction(1, 3)) == GaussRational(Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        f.evaluate(1)


def test_rational_function_equality_against_polynomials():
    assert NuRationalFunction(NU) == NU
    assert NRF_ONE == 1
    assert NuRationalFunction(NU, NuPolynomial((2,))) != NU


def test_json_round_trips():
    p = NuPolynomial((Fraction(1, 2), GaussRational(0, 1), 3))
    assert NuPolynomial.from_json(p.to_json()) == p
    f = NuRationalFunction(NuPolynomial((1, 1)), NuPolynomial((0, 0, 1)))
    assert NuRationalFunction.from_json(f.to_json()) == f


@given(polys, polys, polys)
def test_polynomial_multiplication_distributes(p, q, r):
    assert p * (q + r) == p * q + p * r


def test_str_rendering():
    assert str(NU_ZERO) == "0"
    assert str(NuPolynomial((1, 0, Fraction(-1, 2)))) == "1 + (-1/2)*nu^2"
