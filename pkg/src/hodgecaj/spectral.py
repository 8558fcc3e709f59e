"""Topological recursion on genus-zero curves with one simple ramification point.

A curve is a pair of truncated Laurent series (x(z), y(z)) with
x = z^2/2 (1 + O(z)), so dx has its only relevant zero at z = 0.  The
correlators are stored as :class:`MultiDiff` tables: the coefficient of
prod_i dz_i / z_i^{k_i}, with every k_i >= 2.

With sigma the deck transformation (x(sigma(z)) = x(z), sigma = -z + ...)
the recursion kernel is

    K(z1, z) = 1/2 * dz1 sum_{m>=1} (z^m - sigma(z)^m) z1^{-m-1}
               / ((y(z) - y(sigma(z))) x'(z) dz)

i.e. half of the integral of the Cauchy kernel from sigma(z) to z, divided
by omega_{0,1}(z) - omega_{0,1}(sigma(z)).  The residue at z = 0 is exact as
long as the series windows are long enough; the series layer raises
:class:`~hodgecaj.series.TruncationError` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from math import factorial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .constraints import Report
from .curve import CurveData, double_factorial
from .scalars import Scalar, to_text
from .series import LaurentSeries, arctanh, log1p, revert, sqrt
from .tpoly import GradedSeries, TPolynomial, mono_count

Key = Tuple[int, ...]


class SpectralError(ValueError):
    """Bad curve data or an unstable/unsupported correlator request."""


# ---------------------------------------------------------------------------
# correlator tables


@dataclass
class MultiDiff:
    g: int
    n: int
    coeffs: Dict[Key, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: c for k, c in self.coeffs.items() if c}
        for k in self.coeffs:
            if len(k) != self.n:
                raise SpectralError(f"key {k} has the wrong arity for n = {self.n}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiDiff):
            return NotImplemented
        return (self.g, self.n) == (other.g, other.n) and self.coeffs == other.coeffs

    def scale(self, c: Scalar) -> "MultiDiff":
        return MultiDiff(self.g, self.n, {k: v * c for k, v in self.coeffs.items()})

    def is_symmetric(self) -> bool:
        for key, c in self.coeffs.items():
            for perm in set(permutations(key)):
                if self.coeffs.get(perm, 0) != c:
                    return False
        return True

    def pole_orders(self) -> set:
        return {k for key in self.coeffs for k in key}

    def difference(self, other: "MultiDiff") -> Dict[Key, Scalar]:
        keys = set(self.coeffs) | set(other.coeffs)
        out = {}
        for k in keys:
            d = self.coeffs.get(k, 0) - other.coeffs.get(k, 0)
            if d:
                out[k] = d
        return out

    def to_json_obj(self) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "terms": [{"poles": list(k), "coeff": to_text(c)} for k, c in sorted(self.coeffs.items())],
        }


def pole_bound(g: int, n: int) -> int:
    """Largest pole order expected in omega_{g,n} for the curves handled here."""
    return 2 * (3 * g - 2 + n) + 2


# ---------------------------------------------------------------------------
# curves


def deck_transform(x: LaurentSeries) -> LaurentSeries:
    """sigma with x(sigma(z)) = x(z) and sigma = -z + O(z^2).

    Writing x = zeta^2/2 with zeta = z + O(z^2), the involution is
    zeta^{-1}(-zeta(z)).
    """
    if x.order != 2 or x.coeff(2) != Fraction(1, 2):
        raise SpectralError("x must be z^2/2 + O(z^3), so that dx has a simple zero at 0")
    zeta = sqrt(x.shift(-2).scale(2)).shift(1)
    return revert(zeta).compose(-zeta)


class SpectralCurve:
    """Spectral data (x, y) with its deck transformation, truncated at ``order``."""

    def __init__(self, x: LaurentSeries, y: LaurentSeries, order: int, name: str = ""):
        self.order = order
        self.x = x.with_trunc(order + 2) if x.trunc is None or x.trunc > order + 2 else x
        self.y = y.with_trunc(order) if y.trunc is None or y.trunc > order else y
        self.name = name
        self._powers: Dict[Tuple[str, int], LaurentSeries] = {}

    def __repr__(self) -> str:
        return f"SpectralCurve({self.name}, order={self.order})"

    # -- registered curves ------------------------------------------------------
    @classmethod
    def airy(cls, order: int) -> "SpectralCurve":
        return cls(_half_square(), LaurentSeries.z(), order, "airy")

    @classmethod
    def bessel(cls, order: int) -> "SpectralCurve":
        return cls(_half_square(), LaurentSeries.monomial(1, -1), order, "bessel")

    @classmethod
    def s_curve(cls, alpha: int, u, order: int) -> "SpectralCurve":
        """x = z^2/2 with the kappa-shifted y: 1/(z(1-u^2z^2)) or arctanh(uz)/(u(1-u^2z^2))."""
        u = Fraction(u)
        n = order + 2
        geometric = LaurentSeries([1, 0, -u * u], 0, n).inverse()
        if alpha == 0:
            y = geometric.shift(-1)
        elif u == 0:
            y = LaurentSeries.z()
        else:
            y = arctanh(LaurentSeries([0, u], 0, n)).scale(1 / u) * geometric
        return cls(_half_square(), y, order, f"s{alpha}")

    @classmethod
    def hodge(cls, alpha: int, curve: CurveData) -> "SpectralCurve":
        """The pair (x, y_alpha) of the triple Hodge deformation at curve's (p, s)."""
        if curve.line == "base":
            return cls.bessel(curve.order - 2) if alpha == 0 else cls.airy(curve.order - 2)
        return cls(curve.x, curve.y(alpha), curve.order - 2, f"xy{alpha}")

    @classmethod
    def named(cls, name: str, u=0, order: int = 24, p=None, s=None) -> "SpectralCurve":
        if name == "airy":
            return cls.airy(order)
        if name == "bessel":
            return cls.bessel(order)
        if name in ("s0", "s1"):
            return cls.s_curve(int(name[1]), u, order)
        if name in ("xy0", "xy1"):
            data = CurveData.at(p, s, order + 2) if p is not None else CurveData.at_u(u, order + 2)
            return cls.hodge(int(name[2]), data)
        raise SpectralError(f"unknown curve {name!r}")

    # -- transformations ---------------------------------------------------------
    def rescaled(self, eps: Scalar) -> "SpectralCurve":
        return SpectralCurve(self.x, self.y.scale(eps), self.order, f"{self.name}*{eps}")

    def symplectic(self, g: LaurentSeries) -> "SpectralCurve":
        """(g(x), y / g'(x)) for a power series g = x + O(x^2)."""
        new_x = g.compose(self.x)
        new_y = self.y * g.derivative().compose(self.x).inverse()
        return SpectralCurve(new_x, new_y, self.order, f"g({self.name})")

    # -- derived series ----------------------------------------------------------
    @cached_property
    def sigma(self) -> LaurentSeries:
        return deck_transform(self.x)

    @cached_property
    def sigma_prime(self) -> LaurentSeries:
        return self.sigma.derivative()

    def power(self, which: str, k: int) -> LaurentSeries:
        """z^k (``which="z"``) or sigma(z)^k."""
        key = (which, k)
        s = self._powers.get(key)
        if s is None:
            if which == "z":
                s = LaurentSeries.monomial(1, k)
            elif k >= 0:
                s = self.sigma ** k
            else:
                s = self.power("sigma", -k).inverse()
            self._powers[key] = s
        return s

    @cached_property
    def kernel_denominator(self) -> LaurentSeries:
        y_sigma = self.y.compose(self.sigma)
        return (self.y - y_sigma) * self.x.derivative()

    def kernel(self, m: int) -> LaurentSeries:
        """Coefficient of dz1/z1^{m+1} in K(z1, z), as a series in z (per dz^-1)."""
        key = ("kernel", m)
        s = self._powers.get(key)
        if s is None:
            s = (self.power("z", m) - self.power("sigma", m)) * self.kernel_denominator.inverse()
            s = s.scale(Fraction(1, 2))
            self._powers[key] = s
        return s

    def check(self) -> List[str]:
        """Defining identities of the deck transformation, to the available window."""
        problems = []
        s = self.sigma
        if not (self.x.compose(s) - self.x).is_zero():
            problems.append("x(sigma(z)) != x(z)")
        back = s.compose(s) - LaurentSeries.z()
        if not back.is_zero():
            problems.append("sigma(sigma(z)) != z")
        return problems


def _half_square() -> LaurentSeries:
    return LaurentSeries.monomial(Fraction(1, 2), 2)


def kdv_symplectic_map(u, order: int) -> LaurentSeries:
    """g(x) = -log(1 - 2u^2 x)/(2u^2), the map taking the S curves to (x, y_alpha)."""
    u = Fraction(u)
    if u == 0:
        return LaurentSeries.z()
    c = 2 * u * u
    return log1p(LaurentSeries([0, -c], 0, order)).scale(-1 / c)


# ---------------------------------------------------------------------------
# the recursion


class _Slots:
    """Series-valued tables: rest key -> Laurent series in z (coefficient of dz or dz^2)."""

    @staticmethod
    def first_at_z(omega: MultiDiff, curve: SpectralCurve) -> Dict[Key, LaurentSeries]:
        out: Dict[Key, Dict[int, Scalar]] = {}
        for key, c in omega.coeffs.items():
            d = out.setdefault(key[1:], {})
            d[-key[0]] = d.get(-key[0], 0) + c
        return {r: LaurentSeries.from_dict(d) for r, d in out.items()}

    @staticmethod
    def first_at_sigma(omega: MultiDiff, curve: SpectralCurve) -> Dict[Key, LaurentSeries]:
        out: Dict[Key, LaurentSeries] = {}
        for key, c in omega.coeffs.items():
            term = curve.power("sigma", -key[0]).scale(c)
            r = key[1:]
            out[r] = out[r] + term if r in out else term
        return {r: s * curve.sigma_prime for r, s in out.items()}


def _bilinear_at_z(kmax: int) -> Dict[Key, LaurentSeries]:
    """omega_{0,2}(z, w) = sum_{m>=1} m z^{m-1} dz dw / w^{m+1}, keys k = m + 1 <= kmax."""
    return {(m + 1,): LaurentSeries.monomial(m, m - 1) for m in range(1, kmax)}


def _bilinear_at_sigma(curve: SpectralCurve, kmax: int) -> Dict[Key, LaurentSeries]:
    return {(m + 1,): curve.power("sigma", m - 1).scale(m) * curve.sigma_prime for m in range(1, kmax)}


class Recursion:
    """Memoised correlators of one curve."""

    def __init__(self, curve: SpectralCurve, slack: int = 2):
        self.curve = curve
        self.slack = slack
        self.table: Dict[Tuple[int, int], MultiDiff] = {}

    def omega(self, g: int, n: int) -> MultiDiff:
        if 2 * g - 2 + n <= 0 or n < 1:
            raise SpectralError(f"omega_{g},{n} is unstable")
        key = (g, n)
        if key not in self.table:
            self.table[key] = self._step(g, n)
        return self.table[key]

    # slot tables for the first argument at z or at sigma(z)
    def _at(self, g: int, n: int, where: str, kmax: int) -> Dict[Key, LaurentSeries]:
        if (g, n) == (0, 2):
            return _bilinear_at_z(kmax) if where == "z" else _bilinear_at_sigma(self.curve, kmax)
        om = self.omega(g, n)
        return _Slots.first_at_z(om, self.curve) if where == "z" else _Slots.first_at_sigma(om, self.curve)

    def _step(self, g: int, n: int) -> MultiDiff:
        curve = self.curve
        bound = pole_bound(g, n)
        kmax = bound + self.slack + 1  # keys up to bound + slack
        rest = n - 1
        integrand: Dict[Key, LaurentSeries] = {}

        def add(key: Key, s: LaurentSeries) -> None:
            integrand[key] = integrand[key] + s if key in integrand else s

        # omega_{g-1, n+1}(z, sigma(z), z_J)
        if g >= 1:
            if (g - 1, n + 1) == (0, 2):
                z = LaurentSeries.z()
                add((), curve.sigma_prime * (z - curve.sigma).inverse() ** 2)
            else:
                om = self.omega(g - 1, n + 1)
                for key, c in om.coeffs.items():
                    s = curve.power("sigma", -key[1]) * curve.sigma_prime
                    add(key[2:], LaurentSeries.monomial(c, -key[0]) * s)
        # sum over splittings, excluding omega_{0,1} factors
        positions = tuple(range(rest))
        for size in range(rest + 1):
            for first in combinations(positions, size):
                second = tuple(i for i in positions if i not in first)
                for g1 in range(g + 1):
                    g2 = g - g1
                    if (g1, size) == (0, 0) or (g2, rest - size) == (0, 0):
                        continue
                    left = self._at(g1, size + 1, "z", kmax)
                    right = self._at(g2, rest - size + 1, "sigma", kmax)
                    for lk, ls in left.items():
                        for rk, rs in right.items():
                            full = [0] * rest
                            for pos, k in zip(first, lk):
                                full[pos] = k
                            for pos, k in zip(second, rk):
                                full[pos] = k
                            add(tuple(full), ls * rs)
        coeffs: Dict[Key, Scalar] = {}
        for rkey, series in integrand.items():
            for m in range(1, kmax):
                res = (curve.kernel(m) * series).coeff(-1)
                if res:
                    coeffs[(m + 1,) + rkey] = coeffs.get((m + 1,) + rkey, 0) + res
        over = {k: c for k, c in coeffs.items() if max(k) > bound}
        if over:
            raise SpectralError(f"omega_{g},{n} has poles beyond the expected bound {bound}: {sorted(over)[:3]}")
        return MultiDiff(g, n, coeffs)


def recursion_step(curve: SpectralCurve, g: int, n: int, lower: Optional[Recursion] = None) -> MultiDiff:
    rec = lower if lower is not None else Recursion(curve)
    return rec.omega(g, n)


# ---------------------------------------------------------------------------
# the intersection-number route


def dphi_tables(phi: Sequence[LaurentSeries]) -> List[Dict[int, Scalar]]:
    """d Phi_a as {k: c} meaning c dz / z^k, using d(z^{-j}) = -j z^{-j-1} dz."""
    out = []
    for series in phi:
        d: Dict[int, Scalar] = {}
        for e, c in series.items():
            if e >= 0:
                raise SpectralError("Phi basis must be a polar Laurent polynomial")
            d[1 - e] = d.get(1 - e, 0) + e * c
        out.append(d)
    return out


def standard_basis(kmax: int) -> Tuple[Dict[int, Dict[int, Scalar]], List[LaurentSeries]]:
    """t_{2k+1} = T_k/(2k+1)!! and Phi_a = (2a-1)!! z^{-2a-1}."""
    inverse = {2 * k + 1: {k: Fraction(1, double_factorial(2 * k + 1))} for k in range(kmax + 1)}
    phi = [LaurentSeries.monomial(double_factorial(2 * a - 1), -2 * a - 1) for a in range(kmax + 1)]
    return inverse, phi


def correlator_from_intersections(
    log_tau: GradedSeries,
    g: int,
    n: int,
    inverse: Dict[int, Dict[int, Scalar]],
    phi: Sequence[LaurentSeries],
) -> MultiDiff:
    """omega_{g,n} = d_1..d_n sum <tau_a1..tau_an> prod Phi_ai(z_i) from the log of a tau-function."""
    level = 2 * g - 2 + n
    if level <= 0 or n < 1:
        raise SpectralError(f"omega_{g},{n} is unstable")
    part = TPolynomial({m: c for m, c in log_tau[level] if mono_count(m) == n})
    # T_a is stored as variable a + 1; even t are set to zero
    images = {}
    for i in part.variables():
        if i in inverse:
            images[i] = TPolynomial({((a + 1, 1),): c for a, c in inverse[i].items()})
        elif i % 2 == 0:
            images[i] = TPolynomial()
        else:
            raise SpectralError(f"no inverse for t{i}")
    in_T = part.substitute_linear(images)
    dphi = dphi_tables(phi)
    coeffs: Dict[Key, Scalar] = {}
    for m, c in in_T:
        letters: List[int] = []
        weight = 1
        for var, e in m:
            letters.extend([var - 1] * e)
            weight *= factorial(e)
        if len(letters) != n:
            raise SpectralError("change of variables mixed numbers of marked points")
        correlator = c * weight
        for order in set(permutations(letters)):
            partial: Dict[Key, Scalar] = {(): correlator}
            for a in order:
                if a >= len(dphi):
                    raise SpectralError(f"Phi basis too short for index {a}")
                partial = {k + (j,): v * w for k, v in partial.items() for j, w in dphi[a].items()}
            for k, v in partial.items():
                coeffs[k] = coeffs.get(k, 0) + v
    return MultiDiff(g, n, coeffs)


# ---------------------------------------------------------------------------
# comparisons


def compare_curves(first: SpectralCurve, second: SpectralCurve, pairs: Iterable[Tuple[int, int]], factor: Callable[[int, int], Scalar] = None) -> Report:
    """omega^second_{g,n} == factor(g, n) * omega^first_{g,n} for every pair."""
    ra, rb = Recursion(first), Recursion(second)
    report = Report(f"{first.name} vs {second.name}")
    for g, n in pairs:
        a = ra.omega(g, n)
        if factor is not None:
            a = a.scale(factor(g, n))
        _record_diff(report, f"omega_{g},{n}", rb.omega(g, n), a)
    return report


def _record_diff(report: Report, label: str, a: MultiDiff, b: MultiDiff) -> None:
    report.checked += 1
    for k, v in sorted(a.difference(b).items()):
        report.offenders.append((label, str(k), to_text(v)))


def compare_routes(curve: SpectralCurve, log_tau: GradedSeries, inverse, phi, pairs: Iterable[Tuple[int, int]]) -> Report:
    rec = Recursion(curve)
    report = Report(f"{curve.name}: recursion vs intersections")
    for g, n in pairs:
        _record_diff(report, f"omega_{g},{n}", rec.omega(g, n), correlator_from_intersections(log_tau, g, n, inverse, phi))
    return report


CURVE_NAMES = ("airy", "bessel", "s0", "s1", "xy0", "xy1")


def curve_alpha(name: str) -> int:
    return {"airy": 1, "bessel": 0}.get(name, int(name[-1]) if name[-1] in "01" else -1)


def reference_route(name: str, level: int, u=0, p=None, s=None):
    """(log tau, t-inverse, Phi basis) feeding the intersection route of a named curve.

    airy/bessel use the base tau-function; s0/s1 use the kappa-shifted base
    tau-function at u; xy0/xy1 use the cut-and-join tau at (p, s), or at the
    KdV point of u when p is not given.
    """
    from .caj import expand
    from .kdv import shifted_tau
    from .tpoly import graded_log

    if name not in CURVE_NAMES:
        raise SpectralError(f"unknown curve {name!r}")
    alpha = curve_alpha(name)
    kmax = ((2 * alpha + 1) * level) // 2 + 1
    if name in ("airy", "bessel"):
        inverse, phi = standard_basis(kmax)
        return graded_log(expand(alpha, level)), inverse, phi
    if name in ("s0", "s1"):
        inverse, phi = standard_basis(kmax)
        return graded_log(shifted_tau(alpha, u, level)), inverse, phi
    order = (2 * alpha + 1) * level + 3
    data = CurveData.at(p, s, order) if p is not None else CurveData.at_u(u, order)
    log_tau = graded_log(expand(alpha, level, "qp", data))
    return log_tau, data.times_inverse(kmax), data.phi_basis(kmax)


def stable_pairs(gmax: int, nmax: int) -> List[Tuple[int, int]]:
    return [(g, n) for g in range(gmax + 1) for n in range(1, nmax + 1) if 2 * g - 2 + n > 0]
