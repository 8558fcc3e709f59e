from fractions import Fraction

import pytest

from hodgecaj.caj import (
    CAJError,
    CAJSpec,
    build_caj,
    expand,
    fixed_n_residual,
    fixed_n_split,
    run_general,
    run_recursion,
)
from hodgecaj.curve import CurveData
from hodgecaj.golden import base_log
from hodgecaj.operators import MulT, OperatorExpr, apply
from hodgecaj.tpoly import GradedSeries, TPolynomial, graded_exp, graded_log, mono, poly_from_text

from conftest import base_tau, curve_at, qp_log


def test_base_w_star_constant_part_alpha_one():
    W = build_caj(CAJSpec(1, "W*", order=1))
    assert apply(W, TPolynomial.constant(1)) == poly_from_text([("t1^3", "1/6"), ("t3", "1/8")])


def test_identity_curve_reduces_to_base():
    curve = CurveData.base(12)
    for alpha in (0, 1):
        K = 3 if alpha == 0 else 2
        assert expand(alpha, K, "qp", curve) == expand(alpha, K)


@pytest.mark.parametrize("alpha, K", [(0, 6), (1, 3)])
def test_base_logs(alpha, K):
    log = graded_log(base_tau(alpha, K))
    for level in range(1, K + 1):
        assert log[level] == base_log(alpha, level)


@pytest.mark.parametrize("alpha, K", [(0, 5), (1, 3)])
def test_w_and_w_star_agree_in_base_mode(alpha, K):
    assert expand(alpha, K, variant="W*") == base_tau(alpha, K)


@pytest.mark.parametrize("alpha, K", [(0, 3), (1, 2)])
def test_w_and_w_star_agree_at_a_point(alpha, K):
    curve = curve_at(3, 2, (2 * alpha + 1) * K + 3)
    assert expand(alpha, K, "qp", curve, "W*") == expand(alpha, K, "qp", curve)


def test_level_two_alpha_zero():
    expected = poly_from_text([("t1^2", "1/16"), ("1", "-(1/128)*(p^2+p*q+q^2)/(p+q)")])
    assert qp_log(0, 2)[2] == expected


def test_level_one_alpha_one():
    expected = poly_from_text(
        [("t1^3", "1/6"), ("t3", "1/8"), ("t2", "(1/12)*(p+2*q)/s"), ("t1", "-(1/24)*p^2/(p+q)")]
    )
    assert qp_log(1, 1)[1] == expected


def test_short_curve_is_rejected():
    with pytest.raises(CAJError):
        expand(0, 4, "qp", curve_at(3, 2, 6))


def test_bad_requests():
    with pytest.raises(CAJError):
        CAJSpec(2)
    with pytest.raises(CAJError):
        CAJSpec(0, mode="qp")
    with pytest.raises(CAJError):
        CAJSpec(0, variant="V")


def test_order_zero_is_one():
    tau = expand(0, 0)
    assert tau[0] == TPolynomial.constant(1)
    assert run_general({}, 0, 4)[0] == TPolynomial.constant(1)


def test_general_recursion_with_single_operator():
    W = build_caj(CAJSpec(0, order=4))
    assert run_general({1: W}, 4, 4) == run_recursion(W, 4, 4)


def test_general_recursion_commuting_family():
    # V_1 = 2 t1, V_2 = -t3 commute, so Z = exp(hbar V_1 + hbar^2 V_2) . 1
    V = {1: OperatorExpr([(Fraction(2), (MulT(1),))]), 2: OperatorExpr([(Fraction(-1), (MulT(3),))])}
    Z = run_general(V, 5, 20)
    exponent = GradedSeries({1: poly_from_text([("t1", "2")]), 2: poly_from_text([("t3", "-1")])}, 5)
    assert Z == graded_exp(exponent)


def test_fixed_n_split_of_log():
    split0 = fixed_n_split(graded_log(base_tau(0, 3)))
    assert split0[(1, 1)] == poly_from_text([("t1", "1/8")])
    split1 = fixed_n_split(graded_log(base_tau(1, 3)))
    assert split1[(3, 3)].coefficient(mono((1, 1), (3, 1), (5, 1))) == Fraction(15, 4)
    assert all(n <= (2 * 1 + 1) * k for k, n in split1)


@pytest.mark.parametrize("alpha, K", [(0, 5), (1, 3)])
def test_fixed_n_recursion(alpha, K):
    assert fixed_n_residual(base_tau(alpha, K), alpha) == []

