"""The KdV point p = 2u^2, q = -u^2 and its kappa-class description.

At this point the deformed tau-function is the base tau-function with the
odd times shifted, t_{2k+1} -> t_{2k+1} + v_{2k+1}(u)/hbar.  A shifted
letter lowers the hbar level by one, so output level m only receives
contributions from finitely many input levels:

* alpha = 0: shifted indices are >= 3 and level k has degree <= k, so at most
  k/3 letters are shifted and k <= 3m/2;
* alpha = 1: shifted indices are >= 5 and level k has degree <= 3k, so at
  most 3k/5 letters are shifted and k <= 5m/2.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, floor
from typing import Dict, List, Tuple

from .caj import expand
from .constraints import Report
from .curve import CurveData, bernoulli_even, double_factorial, harmonic_odd, kdv_shift
from .series import LaurentSeries, exp, log1p
from .tpoly import GradedSeries, Mono, TPolynomial, accumulate

CONTRIBUTION_BOUND = {0: Fraction(3, 2), 1: Fraction(5, 2)}
FIRST_SHIFTED_INDEX = {0: 3, 1: 5}


class KdVError(ValueError):
    """Inconsistent request at the KdV point."""


def base_depth(alpha: int, M: int) -> int:
    """Deepest base level that can reach output level M after the shift."""
    return floor(CONTRIBUTION_BOUND[alpha] * M)


def shifted_tau(alpha: int, u, M: int, base: GradedSeries = None) -> GradedSeries:
    """Base tau_alpha with t_{2k+1} -> t_{2k+1} + v_{2k+1}(u)/hbar, levels 0..M."""
    u = Fraction(u)
    depth = base_depth(alpha, M)
    if base is None:
        base = expand(alpha, max(depth, 1))
    if base.top < depth:
        raise KdVError(f"base tau known through level {base.top}, the shift needs level {depth}")
    first = FIRST_SHIFTED_INDEX[alpha]
    out: Dict[int, Dict[Mono, Fraction]] = {m: {} for m in range(M + 1)}
    for k in range(depth + 1):
        for mono, c in base[k]:
            _spread(mono, c, k, alpha, u, first, M, out)
    return GradedSeries({m: TPolynomial(t) for m, t in out.items()}, M, kdv_parity=True, degree_rule=alpha)


def _spread(mono: Mono, c, level: int, alpha: int, u: Fraction, first: int, M: int, out) -> None:
    # expand prod (t_i + v_i/hbar)^e_i; choosing j_i shifted letters lowers the level by sum j_i
    partial: List[Tuple[Dict[int, int], Fraction, int]] = [({}, Fraction(1), 0)]
    for i, e in mono:
        v = kdv_shift(alpha, u, i) if i >= first else Fraction(0)
        nxt = []
        for kept, w, shifted in partial:
            for j in range(e + 1 if v else 1):
                if level - shifted - j < 0:
                    break
                k2 = dict(kept)
                if e - j:
                    k2[i] = e - j
                nxt.append((k2, w * comb(e, j) * v**j, shifted + j))
        partial = nxt
    for kept, w, shifted in partial:
        target = level - shifted
        if target <= M and w:
            accumulate(out[target], tuple(sorted(kept.items())), c * w)
    # contributions to negative levels cancel in the full sum and are not tracked


def kdv_point_tau(alpha: int, u, M: int) -> GradedSeries:
    """The deformed tau-function at p = 2u^2, s = u from the cut-and-join route."""
    curve = CurveData.at_u(u, (2 * alpha + 1) * M + 3)
    return expand(alpha, M, "qp", curve)


def verify_taueq(alpha: int, u, M: int) -> Report:
    """Shifted base tau equals the cut-and-join tau at the KdV point, level by level."""
    u = Fraction(u)
    lhs = shifted_tau(alpha, u, M)
    rhs = expand(alpha, M) if u == 0 else kdv_point_tau(alpha, u, M)
    report = Report(f"kdv alpha={alpha} u={u}")
    for m in range(M + 1):
        report.record(f"level {m}", lhs[m] - rhs[m])
    return report


# ---------------------------------------------------------------------------
# kappa-class parameters


def elementary_schur(s: List[Fraction], jmax: int) -> List[Fraction]:
    """q_1..q_jmax with 1 - exp(-sum s_j z^j) = sum q_j z^j (s[0] is s_1)."""
    series = LaurentSeries([Fraction(0)] + [-Fraction(x) for x in s[:jmax]], 0, jmax + 1)
    e = exp(series)
    return [-e.coeff(j) for j in range(1, jmax + 1)]


def q_targets(alpha: int, u, jmax: int) -> List[Fraction]:
    """q_j(s^alpha) = (2k+1)!! v_{2k+1}(u) with j = k - alpha."""
    u = Fraction(u)
    return [double_factorial(2 * (j + alpha) + 1) * kdv_shift(alpha, u, 2 * (j + alpha) + 1) for j in range(1, jmax + 1)]


def kappa_parameters(alpha: int, u, jmax: int) -> List[Fraction]:
    """s_1..s_jmax solving sum s_j z^j = -log(1 - sum q_j z^j)."""
    q = q_targets(alpha, u, jmax)
    series = LaurentSeries([Fraction(0)] + [-x for x in q], 0, jmax + 1)
    lg = log1p(series)
    return [-lg.coeff(j) for j in range(1, jmax + 1)]


def q_closed_form(alpha: int, u, j: int) -> Fraction:
    """-(2j-1)!! u^(2j) for alpha = 0 and -(2j+1)!! H_j u^(2j) for alpha = 1."""
    u = Fraction(u)
    if alpha == 0:
        return -double_factorial(2 * j - 1) * u ** (2 * j)
    return -double_factorial(2 * j + 1) * harmonic_odd(j) * u ** (2 * j)


def fp_closed_form(g: int, u) -> Fraction:
    """Triple Hodge integral over M_g at p = 2u^2, q = -u^2 (closed form, g >= 2)."""
    if g < 2:
        raise KdVError("the closed form needs g >= 2")
    u = Fraction(u)
    b = bernoulli_even(g)
    return (
        Fraction(2) ** (2 * g - 3)
        * u ** (6 * g - 6)
        * b[g] / (2 * g)
        * b[g - 1] / (2 * g - 2)
        / factorial(2 * g - 2)
    )


def fp_closed_form_pq(g: int, p, q) -> Fraction:
    """The same integral for general (p, q) with p + q != 0."""
    if g < 2:
        raise KdVError("the closed form needs g >= 2")
    p, q = Fraction(p), Fraction(q)
    b = bernoulli_even(g)
    return Fraction(1, 2) * (q * q * p * p / (q + p)) ** (g - 1) * b[g] / (2 * g) * b[g - 1] / (2 * g - 2) / factorial(2 * g - 2)

