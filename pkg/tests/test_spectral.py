from fractions import Fraction

import pytest

from hodgecaj.curve import CurveData
from hodgecaj.series import LaurentSeries, TruncationError
from hodgecaj.spectral import (
    MultiDiff,
    Recursion,
    SpectralCurve,
    SpectralError,
    compare_curves,
    compare_routes,
    correlator_from_intersections,
    deck_transform,
    kdv_symplectic_map,
    pole_bound,
    recursion_step,
    reference_route,
    stable_pairs,
)

z = LaurentSeries.z()

# Intersection-route oracle values: omega_{g,n} = sum <tau_a...> prod d Phi_a with
# Phi_a = (2a-1)!! z^(-2a-1), so d Phi_a = -(2a+1)!! dz / z^(2a+2).
# <tau_0^3> = 1, <tau_1> = 1/24, <tau_0^3 tau_1> = 1, <tau_1^2> = 1/24, <tau_0 tau_2> = 1/24,
# <tau_4>_2 = 1/1152 for the Airy curve.


@pytest.fixture(scope="module")
def airy():
    return Recursion(SpectralCurve.airy(24))


@pytest.fixture(scope="module")
def bessel():
    return Recursion(SpectralCurve.bessel(24))


def test_deck_of_half_square():
    assert deck_transform(LaurentSeries.monomial(Fraction(1, 2), 2).with_trunc(12)).agrees_with(-z.with_trunc(10))


def test_deck_preserves_x(curve32):
    sigma = deck_transform(curve32.x)
    assert (curve32.x.compose(sigma) - curve32.x).is_zero()
    assert (sigma.compose(sigma) - z).is_zero()


def test_deck_needs_simple_ramification():
    with pytest.raises(SpectralError):
        deck_transform(LaurentSeries.monomial(1, 3).with_trunc(8))


def test_airy_genus_zero_three_points(airy):
    assert airy.omega(0, 3).coeffs == {(2, 2, 2): -1}


def test_airy_genus_one(airy):
    assert airy.omega(1, 1).coeffs == {(4,): Fraction(-3, 24)}
    assert airy.omega(1, 2).coeffs == {(4, 4): Fraction(9, 24), (2, 6): Fraction(15, 24), (6, 2): Fraction(15, 24)}


def test_airy_four_points(airy):
    om = airy.omega(0, 4)
    assert om.coeffs == {k: 3 for k in [(2, 2, 2, 4), (2, 2, 4, 2), (2, 4, 2, 2), (4, 2, 2, 2)]}


def test_airy_genus_two(airy):
    assert airy.omega(2, 1).coeffs == {(10,): -Fraction(945, 1152)}


def test_bessel(bessel):
    assert bessel.omega(1, 1).coeffs == {(2,): Fraction(-1, 8)}
    assert not bessel.omega(0, 3).coeffs
    assert not bessel.omega(0, 4).coeffs


def test_unstable_pairs_rejected(airy):
    with pytest.raises(SpectralError):
        airy.omega(0, 2)
    with pytest.raises(SpectralError):
        airy.omega(1, 0)


def test_airy_limit_of_s_curve():
    assert recursion_step(SpectralCurve.s_curve(1, 0, 16), 1, 1).coeffs == {(4,): Fraction(-1, 8)}


@pytest.mark.parametrize("p, s", [(3, 2), (Fraction(-7, 3), Fraction(1, 2))])
def test_three_point_function_is_parameter_free(p, s):
    curve = SpectralCurve.hodge(1, CurveData.at(p, s, 12))
    assert Recursion(curve).omega(0, 3).coeffs == {(2, 2, 2): -1}


def test_symplectic_pair_without_map():
    u = Fraction(1, 2)
    first = SpectralCurve.s_curve(0, u, 20)
    second = SpectralCurve.hodge(0, CurveData.at_u(u, 22))
    assert compare_curves(first, second, [(1, 1)]).ok


def test_identical_curves(airy):
    assert compare_curves(airy.curve, airy.curve, [(0, 3), (1, 1)]).ok


@pytest.mark.parametrize("name", ["airy", "bessel", "s1"])
def test_rescaling_covariance(name):
    eps = Fraction(-2)
    curve = SpectralCurve.named(name, Fraction(1, 2), 20)
    assert compare_curves(curve, curve.rescaled(eps), stable_pairs(1, 2), lambda g, n: eps ** (2 - 2 * g - n)).ok


def test_symplectic_map_links_s_curve_and_hodge_curve():
    u = Fraction(1, 3)
    mapped = SpectralCurve.s_curve(1, u, 24).symplectic(kdv_symplectic_map(u, 30))
    hodge = SpectralCurve.hodge(1, CurveData.at_u(u, 26))
    assert mapped.x.agrees_with(hodge.x, 20)
    assert mapped.y.agrees_with(hodge.y, 20)
    assert compare_curves(mapped, hodge, [(0, 3), (1, 1), (1, 2)]).ok


def test_short_curve_raises():
    with pytest.raises(TruncationError):
        Recursion(SpectralCurve.airy(8)).omega(2, 1)


def test_curve_identities():
    for name in ("airy", "bessel", "s0", "s1", "xy0", "xy1"):
        assert SpectralCurve.named(name, Fraction(1, 2), 16).check() == []


def test_intersection_route_on_airy():
    log_tau, inverse, phi = reference_route("airy", 3)
    assert correlator_from_intersections(log_tau, 1, 1, inverse, phi) == MultiDiff(1, 1, {(4,): Fraction(-1, 8)})
    assert correlator_from_intersections(log_tau, 0, 3, inverse, phi) == MultiDiff(0, 3, {(2, 2, 2): -1})


def test_intersection_route_needs_basis():
    log_tau, inverse, phi = reference_route("airy", 3)
    with pytest.raises(SpectralError):
        correlator_from_intersections(log_tau, 2, 1, inverse, phi[:2])


@pytest.mark.parametrize("name", ["bessel", "s0", "xy1"])
def test_routes_agree_in_low_genus(name):
    curve = SpectralCurve.named(name, 1, 20)
    log_tau, inverse, phi = reference_route(name, 2, 1)
    assert compare_routes(curve, log_tau, inverse, phi, [(0, 3), (1, 1)]).ok


def test_pole_bound():
    assert pole_bound(1, 1) == 6
    assert pole_bound(0, 3) == 4


def test_stable_pairs():
    assert stable_pairs(1, 2) == [(1, 1), (1, 2)]
    assert stable_pairs(0, 4) == [(0, 3), (0, 4)]


def test_multidiff_arity_check():
    with pytest.raises(SpectralError):
        MultiDiff(0, 3, {(2, 2): 1})
