from fractions import Fraction

import pytest

from hodgecaj.caj import expand
from hodgecaj.golden import hodge_log
from hodgecaj.kdv import (
    KdVError,
    base_depth,
    elementary_schur,
    fp_closed_form,
    fp_closed_form_pq,
    kappa_parameters,
    q_closed_form,
    q_targets,
    shifted_tau,
    verify_taueq,
)
from hodgecaj.scalars import random_points, specialize
from hodgecaj.tpoly import graded_log

from conftest import curve_at


def test_zero_shift_is_identity():
    assert shifted_tau(0, 0, 3) == expand(0, 3)


def test_level_two_constant_alpha_zero():
    u = Fraction(3, 2)
    log = graded_log(shifted_tau(0, u, 2))
    assert log[2].coefficient(()) == -Fraction(3, 128) * u * u


def test_level_two_constant_alpha_one():
    u = Fraction(2, 3)
    log = graded_log(shifted_tau(1, u, 2))
    assert log[2].coefficient(()) == -u**6 / 1440


@pytest.mark.parametrize("alpha, u, M", [(0, 1, 3), (1, Fraction(1, 2), 2), (0, 0, 3), (1, 0, 2), (0, Fraction(-1, 3), 3)])
def test_two_routes_agree(alpha, u, M):
    assert verify_taueq(alpha, u, M).ok


def test_contribution_depth():
    assert base_depth(0, 4) == 6
    assert base_depth(1, 2) == 5


def test_short_base_is_rejected():
    with pytest.raises(KdVError):
        shifted_tau(0, 1, 4, base=expand(0, 3))


@pytest.mark.parametrize("u", [Fraction(1), Fraction(2, 5)])
def test_kappa_parameters(u):
    s0 = kappa_parameters(0, u, 3)
    assert s0 == [-u**2, -Fraction(5, 2) * u**4, -Fraction(37, 3) * u**6]
    s1 = kappa_parameters(1, u, 3)
    assert s1 == [-4 * u**2, -15 * u**4, -Fraction(316, 3) * u**6]


def test_schur_round_trip():
    for alpha in (0, 1):
        u = Fraction(3, 7)
        assert elementary_schur(kappa_parameters(alpha, u, 6), 6) == q_targets(alpha, u, 6)


def test_schur_vanishes_at_zero():
    assert elementary_schur([0] * 5, 5) == [0] * 5


@pytest.mark.parametrize("alpha", [0, 1])
def test_q_closed_forms(alpha):
    u = Fraction(5, 3)
    assert q_targets(alpha, u, 6) == [q_closed_form(alpha, u, j) for j in range(1, 7)]


def test_fp_genus_two():
    for u in (Fraction(1), Fraction(1, 2), Fraction(-3)):
        assert fp_closed_form(2, u) == -u**6 / 1440
    assert fp_closed_form(2, 0) == 0


def test_fp_matches_reference_constant():
    u = Fraction(3, 4)
    constant = hodge_log(1, 2).coefficient(())
    assert specialize(constant, 2 * u * u, u) == fp_closed_form(2, u)


@pytest.mark.parametrize("g", [2, 3])
def test_fp_general_point_against_caj(g):
    for p, s in random_points(2, seed=g):
        K = 2 * g - 2
        log = graded_log(expand(1, K, "qp", curve_at(p, s, 3 * K + 3)))
        assert log[K].coefficient(()) == fp_closed_form_pq(g, p, s * s - p)


def test_fp_needs_genus_two():
    with pytest.raises(KdVError):
        fp_closed_form(1, 1)
