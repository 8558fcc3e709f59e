"""Series attached to the parameters (p, q) of the triple Hodge tau-functions.

A :class:`CurveData` bundles the parameter values (symbolic elements of
Q(p, s) or rationals) with a truncation order ``N`` and lazily builds every
named series.  All primary series are known exactly for exponents below
``N``; ``x`` is kept one order further so that ``f = sqrt(2x)`` reaches ``N``.

Parameter lines
---------------
``generic``  p != 0 and q != 0
``q0``       q = 0 (so p = s^2)
``p0``       p = 0 (so q = s^2)
``base``     p = q = s = 0, where every series collapses to its z^2/2 form

Each line uses its own closed forms; nothing is obtained by taking limits.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb
from typing import Dict, List, Optional, Tuple

from .scalars import ParamScalar, Scalar
from .series import (
    LaurentSeries,
    SeriesError,
    TruncationError,
    field_coeffs_from_flow,
    inv_trunc,
    power_int_trunc,
    revert,
    sqrt,
    z_times_root,
)


class CurveError(ValueError):
    """Invalid parameters for the curve series."""


# ---------------------------------------------------------------------------
# small exact helpers


@lru_cache(maxsize=None)
def bernoulli_even(kmax: int) -> Tuple[Fraction, ...]:
    """B_0, B_2, ..., B_{2 kmax} from z/(e^z - 1) = sum B_n z^n / n!."""
    n = 2 * kmax + 1
    # (e^z - 1)/z = sum z^j/(j+1)!
    fact = [Fraction(1)]
    for j in range(1, n + 2):
        fact.append(fact[-1] * j)
    base = [1 / fact[j + 1] for j in range(n)]
    inv = inv_trunc(base, n)
    return tuple(inv[2 * k] * fact[2 * k] for k in range(kmax + 1))


def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 0!! = 1."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _log1p_linear(c: Scalar, trunc: int) -> LaurentSeries:
    """log(1 + c z)."""
    out = [Fraction(0)] * trunc
    power = Fraction(1)
    for n in range(1, trunc):
        power = power * c
        out[n] = power / n if n % 2 else -power / n
    return LaurentSeries(out, 0, trunc)


def _exp_linear(c: Scalar, trunc: int) -> LaurentSeries:
    """exp(c z)."""
    out = [Fraction(1)] + [Fraction(0)] * (trunc - 1)
    term = Fraction(1)
    for n in range(1, trunc):
        term = term * c / n
        out[n] = term
    return LaurentSeries(out, 0, trunc)


def _geometric(c: Scalar, trunc: int) -> LaurentSeries:
    """1/(1 + c z)."""
    out = []
    power = Fraction(1)
    for _ in range(trunc):
        out.append(power)
        power = power * (-c)
    return LaurentSeries(out, 0, trunc)


def power_of(f: LaurentSeries, k: int) -> LaurentSeries:
    """f^k for any integer k, for f of order >= 1 with invertible leading term."""
    v = f.order
    if not f.coeffs:
        raise SeriesError("power of a series with no known leading term")
    rel = f.trunc - v
    u = [f.coeff(v + i) for i in range(rel)]
    return LaurentSeries(power_int_trunc(u, k, rel), k * v, k * v + rel)


def v_alpha_of_virasoro(f: LaurentSeries, alpha: int) -> LaurentSeries:
    """(z^(2a+1) - f^(2a+1)) / (2a+1): translation coefficients of a group element."""
    n = 2 * alpha + 1
    z_n = LaurentSeries.monomial(1, n)
    return (z_n - power_of(f, n)).scale(Fraction(1, n))


# ---------------------------------------------------------------------------


class PowerTable:
    """Cached coefficients [z^m] f^k and [z^(m+1)] f^(k+1)/f' of one series f."""

    def __init__(self, f: LaurentSeries, name: str = ""):
        if f.coeff(0) or f.coeff(1) != 1:
            raise CurveError("power tables need f = z + O(z^2)")
        self.f = f
        self.name = name
        self._powers: Dict[int, LaurentSeries] = {}
        self._sigma: Dict[int, LaurentSeries] = {}
        self._fprime_inv: Optional[LaurentSeries] = None

    def power(self, k: int) -> LaurentSeries:
        s = self._powers.get(k)
        if s is None:
            s = power_of(self.f, k)
            self._powers[k] = s
        return s

    def rho(self, k: int, m: int) -> Scalar:
        if m < k:
            return Fraction(0)
        return self.power(k).coeff(m)

    def sigma_series(self, k: int) -> LaurentSeries:
        s = self._sigma.get(k)
        if s is None:
            if self._fprime_inv is None:
                self._fprime_inv = self.f.derivative().inverse()
            s = self.power(k + 1) * self._fprime_inv
            self._sigma[k] = s
        return s

    def sigma(self, k: int, m: int) -> Scalar:
        if m < k:
            return Fraction(0)
        return self.sigma_series(k).coeff(m + 1)

    def max_window(self, k: int) -> int:
        """Largest m for which rho[k, m] and sigma[k, m] are both known."""
        return k + self.f.trunc - 3


# ---------------------------------------------------------------------------


class CurveData:
    """Named series for fixed parameters (p, s) with q = s^2 - p."""

    def __init__(self, p: Scalar, s: Scalar, order: int, line: Optional[str] = None):
        if order < 4:
            raise CurveError("series order must be at least 4")
        self.p = p
        self.s = s
        self.q = s * s - p
        self.order = order
        detected = _detect_line(self.p, self.q, self.s)
        if line is not None and line != detected:
            raise CurveError(f"parameters do not lie on the {line!r} line")
        self.line = detected
        self._tables: Dict[object, PowerTable] = {}

    # -- factories ------------------------------------------------------------
    @classmethod
    def symbolic(cls, order: int, line: str = "generic") -> "CurveData":
        s = ParamScalar.s()
        if line == "generic":
            return cls(ParamScalar.p(), s, order)
        if line == "q0":
            return cls(s * s, s, order)
        if line == "p0":
            return cls(ParamScalar.const(0), s, order)
        if line == "base":
            return cls.base(order)
        raise CurveError(f"unknown parameter line {line!r}")

    @classmethod
    def at(cls, p0, s0, order: int) -> "CurveData":
        return cls(Fraction(p0), Fraction(s0), order)

    @classmethod
    def at_u(cls, u, order: int) -> "CurveData":
        """The KdV point p = 2u^2, q = -u^2, s = u."""
        u = Fraction(u)
        return cls(2 * u * u, u, order)

    @classmethod
    def base(cls, order: int) -> "CurveData":
        return cls(Fraction(0), Fraction(0), order)

    def __repr__(self) -> str:
        return f"CurveData(p={self.p}, s={self.s}, order={self.order}, line={self.line})"

    # -- scalar constants --------------------------------------------------------
    @cached_property
    def r(self) -> Scalar:
        """(p + 2q)/s, the coefficient of 1/z^0 in 1/x'(z); zero on the base line."""
        if self.line == "base":
            return Fraction(0)
        return (self.p + 2 * self.q) / self.s

    @cached_property
    def casimir(self) -> Scalar:
        """(p^2 + pq + q^2)/(p + q)."""
        if self.line == "base":
            return Fraction(0)
        return (self.p * self.p + self.p * self.q + self.q * self.q) / (self.s * self.s)

    def central_constant(self, alpha: int) -> Scalar:
        """Constant added to the conjugated L_{-2} in the Hodge cut-and-join operator."""
        return (Fraction(1 if alpha == 1 else 0, 90) - Fraction(1, 18)) * self.casimir

    # -- core series -------------------------------------------------------------
    @cached_property
    def x(self) -> LaurentSeries:
        n = self.order + 1
        p, q, s = self.p, self.q, self.s
        if self.line == "generic":
            a = _log1p_linear(q / s, n).scale(s * s / (p * q))
            b = _log1p_linear(s, n).scale(1 / p)
            return a - b
        if self.line == "q0":
            return LaurentSeries.monomial(1 / s, 1) - _log1p_linear(s, n).scale(1 / p)
        if self.line == "p0":
            frac = _geometric(s, n).shift(1)  # z/(1 + s z)
            out = _log1p_linear(s, n).scale(1 / q) - frac.scale(1 / s)
            return out.with_trunc(n)
        return LaurentSeries.monomial(Fraction(1, 2), 2)

    @cached_property
    def dx(self) -> LaurentSeries:
        """x'(z); exact rational function expanded to the curve order."""
        out = self.x.derivative()
        return out if out.trunc is not None else out.with_trunc(self.order)

    @cached_property
    def inverse_dx(self) -> LaurentSeries:
        """1/x'(z) = 1/z + (p+2q)/s + q z, an exact Laurent polynomial."""
        return LaurentSeries.from_dict({-1: Fraction(1), 0: self.r, 1: self.q})

    @cached_property
    def f(self) -> LaurentSeries:
        if self.line == "base":
            return LaurentSeries.z().with_trunc(self.order)
        unit = self.x.scale(2).shift(-2)
        return sqrt(unit).shift(1)

    @cached_property
    def h(self) -> LaurentSeries:
        return revert(self.f)

    @cached_property
    def y0(self) -> LaurentSeries:
        return LaurentSeries.monomial(1, -1)

    @cached_property
    def y1(self) -> LaurentSeries:
        n = self.order
        p, q, s = self.p, self.q, self.s
        if self.line == "generic":
            return (_log1p_linear(s, n) - _log1p_linear(q / s, n)).scale(s / p)
        if self.line == "q0":
            return _log1p_linear(s, n).scale(1 / s)
        if self.line == "p0":
            return _geometric(s, n).shift(1).with_trunc(n)
        return LaurentSeries.z().with_trunc(n)

    def y(self, alpha: int) -> LaurentSeries:
        return self.y1 if alpha == 1 else self.y0

    @cached_property
    def Y(self) -> LaurentSeries:
        """Odd part of y1(h(z))."""
        return self.y1.compose(self.h).odd_part()

    @cached_property
    def htilde(self) -> LaurentSeries:
        n = self.order
        p, q, s = self.p, self.q, self.s
        if self.line == "generic":
            num = (_exp_linear(2 * q / s, n + 1) - LaurentSeries.one()).shift(-1)
            den = (LaurentSeries.one() - _exp_linear(-2 * p / s, n + 1)).shift(-1)
            return (num / den).scale(p / (q * s)) - LaurentSeries.monomial(1 / s, 0)
        if self.line == "p0":
            num = (_exp_linear(2 * s, n + 1) - LaurentSeries.one()).shift(-1)
            return num.scale(1 / (2 * q)) - LaurentSeries.monomial(1 / s, 0)
        if self.line == "q0":
            den = (LaurentSeries.one() - _exp_linear(-2 * s, n + 1)).shift(-1)
            return den.inverse().scale(2) - LaurentSeries.monomial(1 / s, 0)
        return LaurentSeries.z().with_trunc(n)

    @cached_property
    def ftilde(self) -> LaurentSeries:
        return revert(self.htilde)

    @cached_property
    def f1(self) -> LaurentSeries:
        """f1 with f1^3/3 = integral_0^z ftilde dx."""
        cube = (self.ftilde * self.dx).antiderivative().scale(3)
        return z_times_root(cube, 3).with_trunc(self.order)

    @cached_property
    def fb1_cube_over_three(self) -> LaurentSeries:
        """f(z; b1)^3 / 3 through the Bernoulli-number expansion."""
        n = self.order + 2
        kmax = (n - 2) // 2
        bern = bernoulli_even(kmax)
        out: Dict[int, Scalar] = {}
        fact = 1
        facts = [1]
        for j in range(1, 2 * kmax + 2):
            fact *= j
            facts.append(fact)
        for k in range(1, kmax + 1):
            if 2 * k + 1 >= n:
                break
            out[2 * k + 1] = Fraction(4**k) * bern[k] / facts[2 * k + 1] * self._bernoulli_weight(k)
        return LaurentSeries.from_dict(out, n)

    def _bernoulli_weight(self, k: int) -> Scalar:
        """((p+q)^(2k+1) - q^(2k+1) - p^(2k+1)) / (p q (p+q)^k), expanded as a polynomial."""
        if self.line == "base":
            return Fraction(1) if k == 1 else Fraction(0)
        p, q = self.p, self.q
        total = Fraction(0)
        for j in range(1, 2 * k + 1):
            total = total + comb(2 * k + 1, j) * p ** (j - 1) * q ** (2 * k - j)
        return total / (self.s ** (2 * k))

    @cached_property
    def fb1(self) -> LaurentSeries:
        return z_times_root(self.fb1_cube_over_three.scale(3), 3).with_trunc(self.order)

    def f_alpha(self, alpha: int) -> LaurentSeries:
        return self.ftilde if alpha == 0 else self.f1

    def f_delta(self, alpha: int) -> LaurentSeries:
        if alpha == 0:
            return self.Y
        cube = (self.Y * LaurentSeries.z()).antiderivative().scale(3)
        return z_times_root(cube, 3).with_trunc(self.order)

    # -- coefficient tables ------------------------------------------------------
    def table(self, which) -> PowerTable:
        """Power table of the base f (``"base"``) or of f_alpha (0 or 1)."""
        t = self._tables.get(which)
        if t is None:
            if which == "base":
                t = PowerTable(self.f, "f")
            elif which in (0, 1):
                t = PowerTable(self.f_alpha(which), f"f{which}")
            else:
                raise CurveError(f"unknown table {which!r}")
            self._tables[which] = t
        return t

    def rho(self, which, k: int, m: int) -> Scalar:
        return self.table(which).rho(k, m)

    def sigma(self, which, k: int, m: int) -> Scalar:
        return self.table(which).sigma(k, m)

    @lru_cache(maxsize=None)
    def chi_series(self, alpha: int, k: int) -> LaurentSeries:
        return self.table("base").power(k + 2) * self.y(alpha)

    def chi(self, alpha: int, k: int, m: int) -> Scalar:
        """[z^m] f^(k+2) y_alpha for the base f."""
        return self.chi_series(alpha, k).coeff(m)

    def flow_coefficients(self, which, kmax: int) -> List[Scalar]:
        """a_1..a_kmax with f = exp(-sum a_k z^(k+1) d/dz) z."""
        f = self.f if which == "base" else self.f_alpha(which)
        return field_coeffs_from_flow(f, kmax)

    # -- translations ------------------------------------------------------------
    def v_shift(self, alpha: int) -> LaurentSeries:
        """Generating series of the translation turning tau_alpha into Z^(alpha)."""
        if alpha == 0:
            return self.f - self.y1
        return ((self.f - self.y1) * self.dx).antiderivative()

    def v_shift_integral(self, alpha: int) -> LaurentSeries:
        """integral_0^z (f^(2a-1) - y_a) dx, the unsimplified form of :meth:`v_shift`."""
        integrand = (power_of(self.f, 2 * alpha - 1) - self.y(alpha)) * self.dx
        return integrand.antiderivative()

    def vtilde(self, alpha: int) -> LaurentSeries:
        """integral_0^z (eta^(2a) - eta y_a(h(eta))) d eta."""
        z = LaurentSeries.z()
        if alpha == 0:
            inner = z * self.h.inverse()
        else:
            inner = z * self.y1.compose(self.h)
        return (LaurentSeries.monomial(1, 2 * alpha) - inner).antiderivative()

    # -- change of variables -----------------------------------------------------
    def times_map(self, kmax: int) -> List[Dict[int, Scalar]]:
        """Linear forms T_0..T_kmax as {m: coefficient of t_m}."""
        q, r = self.q, self.r
        forms: List[Dict[int, Scalar]] = [{1: Fraction(1)}]
        for _ in range(kmax):
            prev = forms[-1]
            top = max(prev) + 2
            nxt: Dict[int, Scalar] = {}
            for m in range(1, top + 1):
                c = q * prev.get(m, 0) + r * prev.get(m - 1, 0) + prev.get(m - 2, 0)
                if c:
                    nxt[m] = m * c
            forms.append(nxt)
        return forms

    def times_inverse(self, kmax: int) -> Dict[int, Dict[int, Scalar]]:
        """t_{2k+1} (even t set to zero) as a combination {a: c} of T_0..T_kmax."""
        forms = self.times_map(kmax)
        inverse: Dict[int, Dict[int, Scalar]] = {}
        for k in range(kmax + 1):
            lead = forms[k].get(2 * k + 1)
            if not lead:
                raise CurveError("change of variables is not triangular")
            # T_k = lead * t_{2k+1} + sum_{j<k} c_j t_{2j+1}
            combo: Dict[int, Scalar] = {k: 1 / lead}
            for j in range(k):
                c = forms[k].get(2 * j + 1, 0)
                if not c:
                    continue
                for a, w in inverse[2 * j + 1].items():
                    combo[a] = combo.get(a, 0) - c * w / lead
            inverse[2 * k + 1] = {a: w for a, w in combo.items() if w}
        return inverse

    def phi_basis(self, kmax: int) -> List[LaurentSeries]:
        """Phi_k = (-d/dx)^k (1/z), exact Laurent polynomials."""
        out = [LaurentSeries.monomial(1, -1)]
        for _ in range(kmax):
            out.append(-(self.inverse_dx * out[-1].derivative()))
        return out


def _detect_line(p: Scalar, q: Scalar, s: Scalar) -> str:
    if not p and not q:
        if s:
            raise CurveError("p = q = 0 requires s = 0")
        return "base"
    if not s:
        raise CurveError("p + q = 0 is not allowed")
    if not q:
        return "q0"
    if not p:
        return "p0"
    return "generic"


# ---------------------------------------------------------------------------
# closed forms at the KdV point p = 2u^2, q = -u^2


def harmonic_odd(k: int) -> Fraction:
    """sum_{j=0}^{k} 1/(2j+1)."""
    return sum((Fraction(1, 2 * j + 1) for j in range(k + 1)), Fraction(0))


def kdv_shift(alpha: int, u, index: int) -> Fraction:
    """Translation of t_index at the KdV point; zero below the first shifted index."""
    u = Fraction(u)
    if index % 2 == 0:
        return Fraction(0)
    if alpha == 0:
        k = (index - 1) // 2
        if k < 1:
            return Fraction(0)
        return -(u ** (2 * k)) / (2 * k + 1)
    k = (index - 3) // 2
    if k < 1:
        return Fraction(0)
    return -(u ** (2 * k)) / (2 * k + 3) * harmonic_odd(k)


__all__ = [
    "CurveData",
    "CurveError",
    "PowerTable",
    "TruncationError",
    "bernoulli_even",
    "double_factorial",
    "harmonic_odd",
    "kdv_shift",
    "power_of",
    "v_alpha_of_virasoro",
]
