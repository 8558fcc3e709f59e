"""Heisenberg-Virasoro constraints of the deformed tau-functions.

For fixed curve data (the base series f and y_alpha) the operators are

    J_k = 1/2 sum_{m >= 2k} rho[2k, m] J_m                               (k > 0)
    L_k = A_k - B_k / (2 hbar)                                           (k >= -alpha)
    A_k = 1/2 sum_m sigma[2k, m] L_m + delta_{k,0}/16 - delta_{k,-1} C/48
    B_k = sum_{m >= 2k+1+2 alpha} chi_alpha[2k, m] J_m

with C = (p^2 + pq + q^2)/(p + q).  The infinite sums are cut at the degree
of whatever polynomial the operator acts on; every index beyond that acts
by zero, so each action below is exact.  hbar is never stored: B_k maps
level l + 1 of tau to level l of the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .curve import CurveData
from .operators import Const, Heis, LinearOp, Vir, apply
from .scalars import Scalar, to_text, weight_of
from .series import TruncationError
from .tpoly import GradedSeries, Mono, TPolynomial, mono_degree, mono_text, monomials_up_to


class ConstraintError(ValueError):
    """The data is too short to decide a constraint."""


@dataclass
class Report:
    """Offending (label, monomial, value) triples; empty means the check passed."""

    name: str
    checked: int = 0
    offenders: List[Tuple[str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.offenders

    def record(self, label: str, residue: TPolynomial) -> None:
        self.checked += 1
        for m, c in residue.sorted_items():
            self.offenders.append((label, mono_text(m), to_text(c)))

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.offenders.extend(other.offenders)
        return self

    def to_json_obj(self) -> dict:
        return {
            "check": self.name,
            "checked": self.checked,
            "ok": self.ok,
            "offenders": [{"where": w, "monomial": m, "value": v} for w, m, v in self.offenders],
        }


class ConstraintSet:
    """The constraint operators for one alpha and one point (p, s)."""

    def __init__(self, alpha: int, curve: CurveData):
        if alpha not in (0, 1):
            raise ConstraintError("alpha must be 0 or 1")
        self.alpha = alpha
        self.curve = curve
        self._ops: Dict[Tuple, LinearOp] = {}

    # -- operator pieces, cut at an input degree --------------------------------
    def _coeff(self, fn: Callable[[], Scalar]) -> Scalar:
        try:
            return fn()
        except TruncationError as exc:
            raise ConstraintError(f"curve order {self.curve.order} too low: {exc}") from exc

    def heisenberg(self, k: int, window: int) -> LinearOp:
        if k < 0:
            raise ConstraintError("Heisenberg constraints need k > 0")
        key = ("J", k, window)
        if key not in self._ops:
            tab = self.curve.table("base")
            pieces = [(self._coeff(lambda m=m: tab.rho(2 * k, m)) / 2, Heis(m)) for m in range(2 * k, window + 1)]
            self._ops[key] = LinearOp(pieces, label=f"J{k}")
        return self._ops[key]

    def virasoro_part(self, k: int, window: int) -> LinearOp:
        """A_k: the hbar-independent part of L_k."""
        self._check_k(k)
        key = ("A", k, window)
        if key not in self._ops:
            tab = self.curve.table("base")
            pieces = [(self._coeff(lambda m=m: tab.sigma(2 * k, m)) / 2, Vir(m)) for m in range(2 * k, window + 1)]
            pieces.append((self.constant(k), Const(Fraction(1))))
            self._ops[key] = LinearOp(pieces, label=f"A{k}")
        return self._ops[key]

    def translation_part(self, k: int, window: int) -> LinearOp:
        """B_k, the coefficient of -1/(2 hbar) in L_k."""
        self._check_k(k)
        key = ("B", k, window)
        if key not in self._ops:
            start = 2 * k + 1 + 2 * self.alpha
            pieces = [
                (self._coeff(lambda m=m: self.curve.chi(self.alpha, 2 * k, m)), Heis(m))
                for m in range(max(start, 1), window + 1)
            ]
            self._ops[key] = LinearOp(pieces, label=f"B{k}")
        return self._ops[key]

    def constant(self, k: int) -> Scalar:
        c: Scalar = Fraction(0)
        if k == 0:
            c = Fraction(1, 16)
        if k == -1:
            c = c - self.curve.casimir / 48
        return c

    def _check_k(self, k: int) -> None:
        if k < -self.alpha:
            raise ConstraintError(f"Virasoro constraints need k >= {-self.alpha}")

    # -- exact actions -------------------------------------------------------
    def act_heisenberg(self, k: int, poly: TPolynomial) -> TPolynomial:
        if not poly:
            return poly
        return apply(self.heisenberg(k, poly.max_degree()), poly)

    def act_a(self, k: int, poly: TPolynomial) -> TPolynomial:
        if not poly:
            return poly
        return apply(self.virasoro_part(k, poly.max_degree()), poly)

    def act_b(self, k: int, poly: TPolynomial) -> TPolynomial:
        if not poly:
            return poly
        return apply(self.translation_part(k, poly.max_degree()), poly)

    def virasoro_level(self, k: int, tau: GradedSeries, level: int) -> TPolynomial:
        """hbar^level coefficient of L_k tau = A_k tau^(level) - B_k tau^(level+1)/2."""
        if level + 1 > tau.top:
            raise ConstraintError(f"level {level} needs tau through level {level + 1}")
        return self.act_a(k, tau[level]) - self.act_b(k, tau[level + 1]).scale(Fraction(1, 2))


# ---------------------------------------------------------------------------
# checks


def verify_annihilation(cs: ConstraintSet, tau: GradedSeries, k: int, levels: int, kind: str = "L") -> Report:
    """Apply J_k (``kind="J"``) or L_k to tau through hbar^levels; expect zero."""
    report = Report(f"{kind}_{k} annihilation")
    for level in range(levels + 1):
        if kind == "J":
            residue = cs.act_heisenberg(k, tau[level])
        else:
            residue = cs.virasoro_level(k, tau, level)
        report.record(f"level {level}", residue)
    return report


def verify_all_constraints(cs: ConstraintSet, tau: GradedSeries, kmax: int, levels: int) -> Report:
    report = Report("constraints")
    for k in range(1, kmax + 1):
        report.merge(verify_annihilation(cs, tau, k, levels, "J"))
    for k in range(-cs.alpha, kmax + 1):
        report.merge(verify_annihilation(cs, tau, k, levels, "L"))
    return report


def _commutator(first: Callable, second: Callable, poly: TPolynomial) -> TPolynomial:
    return first(second(poly)) - second(first(poly))


def verify_commutators(cs: ConstraintSet, kmax: int, basis: Optional[Iterable[Mono]] = None, max_degree: int = 8) -> Report:
    """Heisenberg-Virasoro relations, order by order in 1/hbar, on a monomial basis.

    With L = A - B/(2 hbar) the relation [L_k, L_m] = (k-m) L_{k+m} splits into
    [A_k, A_m] = (k-m) A_{k+m} and [A_k, B_m] + [B_k, A_m] = (k-m) B_{k+m};
    [B_k, B_m] = 0 because B only contains annihilation operators.  The mixed
    relation checked is [L_k, J_j] = -j J_{k+j}, the one the generators obey
    (J_0 is the zero operator).
    """
    if basis is None:
        basis = monomials_up_to(max_degree)
    polys = [TPolynomial({m: Fraction(1)}) for m in basis]
    alpha = cs.alpha
    ks = range(-alpha, kmax + 1)
    js = range(1, kmax + 1)
    report = Report("commutators")

    def A(k):
        return lambda p: cs.act_a(k, p)

    def B(k):
        return lambda p: cs.act_b(k, p)

    def Jh(k):
        return lambda p: cs.act_heisenberg(k, p)

    for poly in polys:
        tag = mono_text(next(iter(poly))[0])
        for k in ks:
            for m in ks:
                if m <= k:
                    continue
                lhs = _commutator(A(k), A(m), poly)
                rhs = cs.act_a(k + m, poly).scale(k - m) if k + m >= -alpha else None
                if rhs is None:
                    raise ConstraintError("index out of range")
                report.record(f"[A{k},A{m}] on {tag}", lhs - rhs)
                mixed = _commutator(A(k), B(m), poly) + _commutator(B(k), A(m), poly)
                report.record(f"[A{k},B{m}]+[B{k},A{m}] on {tag}", mixed - cs.act_b(k + m, poly).scale(k - m))
            for j in js:
                lhs = _commutator(A(k), Jh(j), poly)
                report.record(f"[A{k},J{j}] on {tag}", lhs + cs.act_heisenberg(k + j, poly).scale(j))
                report.record(f"[B{k},J{j}] on {tag}", _commutator(B(k), Jh(j), poly))
        for i in js:
            for j in js:
                if i < j:
                    report.record(f"[J{i},J{j}] on {tag}", _commutator(Jh(i), Jh(j), poly))
    return report


def verify_dimension(tau: GradedSeries, alpha: int) -> Report:
    """Every coefficient at (level k, degree n) has (p, q)-weight ((2a+1)k - n)/2."""
    report = Report("dimension")
    for k in range(tau.top + 1):
        for m, c in tau[k]:
            report.checked += 1
            expected = Fraction((2 * alpha + 1) * k - mono_degree(m), 2)
            try:
                w = weight_of(c)
            except ValueError:
                w = None
            if w != expected:
                report.offenders.append((f"level {k}", mono_text(m), f"weight {w}, expected {expected}"))
    return report


def verify_dimension_scaled(tau: GradedSeries, tau_scaled: GradedSeries, alpha: int, lam: int = 4) -> Report:
    """Compare tau at (p, s) with tau at (lam p, sqrt(lam) s); lam must be a square."""
    root = int(round(lam ** 0.5))
    if root * root != lam:
        raise ConstraintError("the scale factor must be a perfect square")
    report = Report("dimension (scaled)")
    for k in range(min(tau.top, tau_scaled.top) + 1):
        a, b = tau[k], tau_scaled[k]
        for m in set(a.terms) | set(b.terms):
            report.checked += 1
            twice_w = (2 * alpha + 1) * k - mono_degree(m)
            factor = Fraction(root) ** twice_w
            if b.coefficient(m) != a.coefficient(m) * factor:
                report.offenders.append((f"level {k}", mono_text(m), f"{b.coefficient(m)} != {a.coefficient(m) * factor}"))
    return report


def string_operator_sigma(curve: CurveData) -> Dict[int, Scalar]:
    """Closed-form sigma[-2, m]: 1, (2q+p)/s, q at m = -2, -1, 0."""
    return {-2: Fraction(1), -1: (2 * curve.q + curve.p) / curve.s, 0: curve.q}
