from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hodgecaj.operators import DerT, Heis, LinearOp, MulT, OperatorExpr, Vir, apply, commutator_on, J, L
from hodgecaj.tpoly import TPolynomial, monomials_up_to, poly_from_text


def P(*entries):
    return poly_from_text(entries)


def test_euler_operator():
    assert apply(Vir(0), P(("t3", "1"))) == P(("t3", "3"))


def test_lowest_virasoro_on_one():
    assert apply(Vir(-2), TPolynomial.constant(1)) == P(("t1^2", "1/2"))


def test_creation_operator():
    assert apply(Heis(-3), TPolynomial.constant(1)) == P(("t3", "3"))
    assert not apply(Heis(0), P(("t1", "1")))


def test_central_term_of_virasoro():
    # [L_2, L_-2] = 4 L_0 + (2^3 - 2)/12
    f = P(("t2*t4", "1"))
    assert commutator_on(L(2), L(-2), f) == f.scale(24) + f.scale(Fraction(1, 2))


def test_heisenberg_pairing():
    f = P(("t1*t3^2", "2"), ("t5", "-1"))
    assert commutator_on(J(1), J(-1), f) == f


def test_sl2_relation():
    assert commutator_on(L(1), L(-1), P(("t3", "1"))) == P(("t3", "6"))


basis = [TPolynomial({m: Fraction(1)}) for m in monomials_up_to(6)]
indices = st.integers(-4, 4)


@settings(max_examples=60, deadline=None)
@given(indices, indices, st.sampled_from(basis))
def test_virasoro_algebra(k, m, f):
    central = Fraction(k**3 - k, 12) if k + m == 0 else 0
    expected = apply(L(k + m), f).scale(k - m) + f.scale(central)
    assert commutator_on(L(k), L(m), f) == expected


@settings(max_examples=60, deadline=None)
@given(indices, indices, st.sampled_from(basis))
def test_heisenberg_algebra(k, m, f):
    expected = f.scale(k) if k + m == 0 and k != 0 else TPolynomial()
    assert commutator_on(J(k), J(m), f) == expected


@settings(max_examples=60, deadline=None)
@given(indices, indices, st.sampled_from(basis))
def test_mixed_relation(k, m, f):
    # the convention used throughout: [L_k, J_m] = -m J_{k+m}
    assert commutator_on(L(k), J(m), f) == apply(J(k + m), f).scale(-m)


def test_products_apply_right_to_left():
    expr = OperatorExpr.of(DerT(1), MulT(1))
    assert apply(expr, TPolynomial.constant(1)) == TPolynomial.constant(1)
    expr = OperatorExpr.of(MulT(1), DerT(1))
    assert not apply(expr, TPolynomial.constant(1))


def test_degree_cap():
    out = apply(OperatorExpr.of(Vir(-2)), P(("t1", "1")), deg_cap=2)
    assert not out


def test_linear_combination():
    op = LinearOp([(Fraction(2), Heis(1)), (Fraction(-1), Heis(-1))])
    assert apply(op, P(("t1^2", "1"))) == P(("t1", "4"), ("t1^3", "-1"))
