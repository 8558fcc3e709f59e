from fractions import Fraction

from hodgecaj.golden import hodge_log
from hodgecaj.tpoly import GradedSeries, TPolynomial, graded_exp, graded_log, mono, mono_degree, poly_from_text

from conftest import base_tau


def P(*entries):
    return poly_from_text(entries)


def test_like_terms_combine():
    assert P(("t1*t3", "1")) + P(("t3*t1", "1")) == P(("t1*t3", "2"))


def test_degree():
    assert mono_degree(mono((3, 1), (1, 2))) == 5


def test_capped_product():
    a = P(("t1", "1"), ("t3", "1"))
    assert a.mul_capped(a, 4) == P(("t1^2", "1"), ("t1*t3", "2"))


def test_log_of_base_tau_zero():
    log = graded_log(base_tau(0, 3))
    assert log[1] == P(("t1", "1/8"))
    assert log[3] == P(("t1^3", "1/24"), ("t3", "9/128"))


def test_log_of_one():
    one = GradedSeries({0: TPolynomial.constant(1)}, 4)
    assert all(not graded_log(one)[k] for k in range(5))


def test_coefficient_lookup():
    f = P(("t1*t3", "27/128"), ("t1^4", "1/32"))
    assert f.coefficient(mono((1, 1), (3, 1))) == Fraction(27, 128)
    assert f.coefficient(mono((5, 1))) == 0
    assert hodge_log(0, 5).coefficient(mono((5, 1))) == Fraction(225, 1024)


def test_exp_log_round_trip():
    tau = base_tau(1, 3)
    assert graded_exp(graded_log(tau)) == tau


def test_json_round_trip():
    tau = base_tau(1, 2)
    assert GradedSeries.from_json_obj(tau.to_json_obj(), tau.top) == tau


def test_substitute_linear():
    f = P(("t1^2*t3", "2"))
    images = {1: P(("t2", "1"), ("t1", "1"))}
    assert f.substitute_linear(images) == P(("t1^2*t3", "2"), ("t1*t2*t3", "4"), ("t2^2*t3", "2"))
