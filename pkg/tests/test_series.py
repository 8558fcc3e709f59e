from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgecaj.curve import CurveData
from hodgecaj.scalars import parse
from hodgecaj.series import (
    LaurentSeries,
    TruncationError,
    arctanh,
    compose,
    exp,
    field_coeffs_from_flow,
    flow_of_field,
    lagrange_revert,
    log1p,
    revert,
    sqrt,
)

z = LaurentSeries.z()


def poly(*coeffs, start=0, trunc=None):
    return LaurentSeries([Fraction(c) for c in coeffs], start, trunc)


def agree(a, b, upto):
    return all(a.coeff(k) == b.coeff(k) for k in range(-4, upto))


def test_coefficient_of_negative_power():
    f = LaurentSeries.from_dict({-1: 1, 1: 3})
    assert f.coeff(-1) == 1
    assert f.coeff(0) == 0


def test_reading_past_truncation_fails():
    with pytest.raises(TruncationError):
        poly(1, 2, 3, trunc=3).coeff(3)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=30, deadline=None)
@given(st.lists(rationals, min_size=4, max_size=8), st.integers(-3, 3))
def test_derivative_inverts_antiderivative(coeffs, start):
    f = LaurentSeries(coeffs, start, start + len(coeffs))
    if f.residue():
        f = f - LaurentSeries.monomial(f.residue(), -1)
    assert f.antiderivative().derivative().agrees_with(f)


def test_compose_polynomials():
    assert compose(z * z, z + z * z) == poly(0, 0, 1, 2, 1)


def test_compose_with_identity():
    f = poly(0, 1, 3, -2, 5, trunc=5)
    assert compose(f, z) == f


def test_revert_catalan():
    r = revert(poly(0, 1, -1, trunc=9))
    assert [r.coeff(k) for k in range(1, 9)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_revert_identity():
    assert revert(z.with_trunc(6)).agrees_with(z.with_trunc(6))


@settings(max_examples=25, deadline=None)
@given(st.lists(rationals, min_size=5, max_size=5))
def test_revert_matches_lagrange_inversion(tail):
    f = LaurentSeries([Fraction(0), Fraction(1)] + tail, 0, 7)
    assert agree(revert(f), lagrange_revert(f, 7), 7)


def test_revert_ftilde_is_htilde():
    c = CurveData.at(2, 3, 12)
    assert agree(revert(c.ftilde), c.htilde, 10)
    assert agree(compose(c.htilde, c.ftilde), z, 12)


def test_arctanh_is_ftilde_at_kdv_point():
    u = Fraction(1, 3)
    series = arctanh(z.scale(u).with_trunc(12)).scale(1 / u)
    expected = LaurentSeries.from_dict({2 * k + 1: u ** (2 * k) / (2 * k + 1) for k in range(6)}, 12)
    assert agree(series, expected, 12)
    assert agree(CurveData.at_u(u, 12).ftilde, series, 12)


def test_exp_log_round_trip():
    f = poly(0, 2, -1, Fraction(1, 3), 4, trunc=6)
    assert agree(exp(log1p(f)), f + LaurentSeries.one(), 6)


def test_sqrt_of_twice_x_is_f(curve32):
    f = curve32.f
    assert agree(f * f, curve32.x.scale(2), 14)
    assert agree(sqrt(poly(1, 2, 1, trunc=5)), poly(1, 1, trunc=5), 5)


def test_flow_coefficients_of_f():
    a = field_coeffs_from_flow(CurveData.symbolic(8).f, 3)
    assert a[0] == parse("(1/3)*(p+2*q)/s")
    assert a[1] == parse("-(1/12)*(p^2+p*q+q^2)/(p+q)")
    assert a[2] == parse("(31*p^3+69*p^2*q+21*p*q^2+14*q^3)/(1080*s^3)")


def test_flow_of_zero_field():
    assert agree(flow_of_field([0, 0, 0], 6), z, 6)


@settings(max_examples=20, deadline=None)
@given(st.lists(rationals, min_size=4, max_size=4))
def test_flow_round_trip(a):
    assert field_coeffs_from_flow(flow_of_field(a, 7), 4) == a
