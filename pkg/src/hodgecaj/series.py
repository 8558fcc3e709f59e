"""Truncated Laurent series in one formal variable z.

A series stores exact coefficients for exponents below ``trunc``; ``trunc``
is ``None`` for exact Laurent polynomials.  Every operation records the
largest window it can prove exact, and reading a coefficient at or beyond
the window raises :class:`TruncationError` instead of returning a silent 0.

Coefficients may be ``Fraction`` or :class:`~hodgecaj.scalars.ParamScalar`;
only ring operations and division by nonzero scalars are used.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from .scalars import Scalar, to_text


class TruncationError(ArithmeticError):
    """A coefficient outside the provably exact window was requested."""


class SeriesError(ArithmeticError):
    """Precondition failure of a series operation."""


def _fix(c):
    return Fraction(c) if isinstance(c, int) else c


def _min(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# ---------------------------------------------------------------------------
# raw power-series kernels on coefficient lists (index = exponent)


def mul_trunc(a: Sequence, b: Sequence, n: int) -> List:
    """First n coefficients of the product of two power series."""
    out = [Fraction(0)] * n
    la, lb = len(a), len(b)
    for i in range(min(la, n)):
        ai = a[i]
        if not ai:
            continue
        for j in range(min(lb, n - i)):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def inv_trunc(a: Sequence, n: int) -> List:
    """First n coefficients of 1/a for a power series with a[0] invertible."""
    if not a or not a[0]:
        raise SeriesError("power series with zero constant term is not invertible")
    inv0 = 1 / _fix(a[0])
    out = [Fraction(0)] * n
    if n:
        out[0] = inv0
    for k in range(1, n):
        acc = Fraction(0)
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i]:
                acc = acc + a[i] * out[k - i]
        out[k] = -acc * inv0
    return out


def compose_trunc(f: Sequence, g: Sequence, n: int) -> List:
    """First n coefficients of f(g(z)) for power series f and g with g[0] = 0."""
    if g and g[0]:
        raise SeriesError("inner series must have zero constant term")
    m = min(len(f), n)
    out = [Fraction(0)] * n
    if m == 0:
        return out
    # Horner from the top
    out[0] = _fix(f[m - 1])
    for i in range(m - 2, -1, -1):
        out = mul_trunc(out, g, n)
        out[0] = out[0] + f[i]
    return out


def power_one_trunc(a: Sequence, r: Fraction, n: int) -> List:
    """First n coefficients of a^r for a power series with a[0] = 1."""
    if not a or a[0] != 1:
        raise SeriesError("rational powers need constant term 1")
    out = [Fraction(0)] * n
    if n:
        out[0] = Fraction(1)
    for k in range(1, n):
        acc = Fraction(0)
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i]:
                acc = acc + ((r + 1) * i - k) * a[i] * out[k - i]
        out[k] = acc / k
    return out


def exp_trunc(a: Sequence, n: int) -> List:
    """First n coefficients of exp(a) for a with a[0] = 0."""
    if a and a[0]:
        raise SeriesError("exp needs zero constant term")
    out = [Fraction(0)] * n
    if n:
        out[0] = Fraction(1)
    for k in range(1, n):
        acc = Fraction(0)
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i]:
                acc = acc + i * a[i] * out[k - i]
        out[k] = acc / k
    return out


def _deriv(a: Sequence) -> List:
    return [i * a[i] for i in range(1, len(a))]


def _integ(a: Sequence) -> List:
    return [Fraction(0)] + [a[i] / (i + 1) for i in range(len(a))]


# ---------------------------------------------------------------------------


class LaurentSeries:
    """Coefficients for exponents in [start, trunc), stored densely."""

    __slots__ = ("start", "coeffs", "trunc")

    def __init__(self, coeffs: Iterable, start: int = 0, trunc: Optional[int] = None):
        cs = [_fix(c) for c in coeffs]
        if trunc is not None and start + len(cs) > trunc:
            cs = cs[: max(0, trunc - start)]
        lead = 0
        while lead < len(cs) and not cs[lead]:
            lead += 1
        cs = cs[lead:]
        start += lead
        while cs and not cs[-1]:
            cs.pop()
        if not cs:
            start = trunc if trunc is not None else 0
        self.start = start
        self.coeffs = tuple(cs)
        self.trunc = trunc

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_dict(cls, d: Dict[int, Scalar], trunc: Optional[int] = None) -> "LaurentSeries":
        d = {e: c for e, c in d.items() if c and (trunc is None or e < trunc)}
        if not d:
            return cls([], 0, trunc)
        lo, hi = min(d), max(d)
        return cls([d.get(e, 0) for e in range(lo, hi + 1)], lo, trunc)

    @classmethod
    def monomial(cls, c: Scalar, e: int) -> "LaurentSeries":
        return cls([c], e, None)

    @classmethod
    def z(cls) -> "LaurentSeries":
        return cls.monomial(1, 1)

    @classmethod
    def one(cls) -> "LaurentSeries":
        return cls.monomial(1, 0)

    @classmethod
    def zero(cls, trunc: Optional[int] = None) -> "LaurentSeries":
        return cls([], 0, trunc)

    @classmethod
    def from_power_list(cls, coeffs: Sequence, trunc: Optional[int]) -> "LaurentSeries":
        return cls(coeffs, 0, trunc)

    # -- inspection ----------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.trunc is None

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    @property
    def order(self):
        """Valuation: lowest exponent with a nonzero coefficient (or trunc)."""
        if self.coeffs:
            return self.start
        if self.trunc is None:
            return float("inf")
        return self.trunc

    def coeff(self, m: int):
        if self.trunc is not None and m >= self.trunc:
            raise TruncationError(f"coefficient z^{m} requested beyond truncation z^{self.trunc}")
        i = m - self.start
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    __getitem__ = coeff

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.start + i, c

    def to_dict(self) -> Dict[int, Scalar]:
        return dict(self.items())

    def power_list(self, n: int) -> List:
        """Coefficients of z^0 .. z^{n-1}; requires no negative exponents."""
        if self.coeffs and self.start < 0:
            raise SeriesError("series has a pole")
        return [self.coeff(i) for i in range(n)]

    def with_trunc(self, n: int) -> "LaurentSeries":
        if self.trunc is not None and n > self.trunc:
            raise TruncationError(f"cannot extend truncation from {self.trunc} to {n}")
        return LaurentSeries(self.coeffs, self.start, n)

    def map_coeffs(self, fn: Callable) -> "LaurentSeries":
        return LaurentSeries([fn(c) for c in self.coeffs], self.start, self.trunc)

    def __repr__(self) -> str:
        return f"LaurentSeries({self.dump_text()})"

    def dump(self) -> List[str]:
        return [f"{e}: {to_text(c)}" for e, c in self.items()] + [f"trunc: {self.trunc}"]

    def dump_text(self) -> str:
        body = ", ".join(f"{e}: {to_text(c)}" for e, c in self.items())
        return f"{{{body}}} + O(z^{self.trunc})" if self.trunc is not None else f"{{{body}}}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.start, self.coeffs, self.trunc) == (other.start, other.coeffs, other.trunc)

    def agrees_with(self, other: "LaurentSeries", upto: Optional[int] = None) -> bool:
        """Coefficient equality on the common exact window (optionally capped)."""
        hi = _min(self.trunc, other.trunc)
        hi = _min(hi, upto)
        if hi is None:
            return self.to_dict() == other.to_dict()
        lo = min(self.start if self.coeffs else hi, other.start if other.coeffs else hi)
        return all(self.coeff(e) == other.coeff(e) for e in range(lo, hi))

    # -- ring operations -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.monomial(other, 0)
        trunc = _min(self.trunc, other.trunc)
        d: Dict[int, Scalar] = {}
        for e, c in self.items():
            d[e] = c
        for e, c in other.items():
            d[e] = d.get(e, 0) + c
        return LaurentSeries.from_dict(d, trunc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries([-c for c in self.coeffs], self.start, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.monomial(other, 0)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "LaurentSeries":
        return LaurentSeries([c * x for x in self.coeffs], self.start, self.trunc)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by z^k."""
        return LaurentSeries(self.coeffs, self.start + k, None if self.trunc is None else self.trunc + k)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        vf, vg = self.order, other.order
        inf = float("inf")
        t1 = inf if self.trunc is None else self.trunc + (vg if vg != inf else inf)
        t2 = inf if other.trunc is None else other.trunc + (vf if vf != inf else inf)
        t = min(t1, t2)
        if not self.coeffs or not other.coeffs:
            return LaurentSeries.zero(None if t == inf else int(t))
        start = self.start + other.start
        if t == inf:
            n = len(self.coeffs) + len(other.coeffs) - 1
            trunc = None
        else:
            trunc = int(t)
            n = trunc - start
        return LaurentSeries(mul_trunc(self.coeffs, other.coeffs, max(n, 0)), start, trunc)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        if not self.coeffs:
            raise SeriesError("cannot invert a series with no known nonzero coefficient")
        if self.trunc is None:
            if len(self.coeffs) == 1:
                return LaurentSeries([1 / self.coeffs[0]], -self.start, None)
            raise SeriesError("inverse of an exact polynomial needs an explicit truncation (use with_trunc)")
        rel = self.trunc - self.start
        return LaurentSeries(inv_trunc(self.coeffs, rel), -self.start, -self.start + rel)

    def __truediv__(self, other):
        if not isinstance(other, LaurentSeries):
            if not other:
                raise ZeroDivisionError("series division by zero scalar")
            return self.scale(1 / _fix(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return LaurentSeries.monomial(other, 0) * self.inverse()

    def __pow__(self, n: int) -> "LaurentSeries":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentSeries.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus ----------------------------------------------------------------
    def derivative(self) -> "LaurentSeries":
        d = {e - 1: e * c for e, c in self.items() if e}
        return LaurentSeries.from_dict(d, None if self.trunc is None else self.trunc - 1)

    def antiderivative(self) -> "LaurentSeries":
        """Termwise integral with zero constant; needs a known zero z^-1 term."""
        if self.residue():
            raise SeriesError("antiderivative of a series with nonzero z^-1 coefficient")
        d = {e + 1: c / (e + 1) for e, c in self.items()}
        return LaurentSeries.from_dict(d, None if self.trunc is None else self.trunc + 1)

    def residue(self):
        return self.coeff(-1)

    def odd_part(self) -> "LaurentSeries":
        return LaurentSeries.from_dict({e: c for e, c in self.items() if e % 2}, self.trunc)

    def even_part(self) -> "LaurentSeries":
        return LaurentSeries.from_dict({e: c for e, c in self.items() if not e % 2}, self.trunc)

    def truncate(self, n: int) -> "LaurentSeries":
        """Forget coefficients at exponents >= n."""
        if self.trunc is not None and n > self.trunc:
            raise TruncationError(f"cannot truncate at {n} beyond known window {self.trunc}")
        return LaurentSeries(self.coeffs, self.start, n)

    def rescale(self, c: Scalar) -> "LaurentSeries":
        """F(c z)."""
        out = []
        pw = _fix(c) ** self.start if self.coeffs else 1
        for x in self.coeffs:
            out.append(x * pw)
            pw = pw * c
        return LaurentSeries(out, self.start, self.trunc)

    # -- composition -------------------------------------------------------------
    def compose(self, g: "LaurentSeries") -> "LaurentSeries":
        """self(g(z)) for ord(g) >= 1."""
        return compose(self, g)

    def __call__(self, g: "LaurentSeries") -> "LaurentSeries":
        return compose(self, g)


# ---------------------------------------------------------------------------


def compose(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    vg = g.order
    if not g.coeffs:
        raise SeriesError("inner series has no known nonzero term")
    if vg < 1:
        if f.trunc is None and f.coeffs and f.start >= 0:
            return _compose_poly(f, g)
        raise SeriesError("composition needs an inner series of order >= 1")
    if not f.coeffs:
        return LaurentSeries.zero(None if f.trunc is None else f.trunc * vg)
    # precision of powers g^i: relative window of g
    rel = None if g.trunc is None else g.trunc - vg
    bounds = []
    if f.trunc is not None:
        bounds.append(f.trunc * vg)
    if rel is not None:
        bounds.append(f.start * vg + rel)
    if not bounds:
        return _compose_poly(f, g)
    trunc = min(bounds)
    lo = f.start * vg
    n = trunc - lo
    if n <= 0:
        return LaurentSeries.zero(trunc)
    # write g = z^vg * u with u a unit power series
    u = [g.coeff(vg + i) for i in range(n)]
    # f(g) = sum_i f_i z^(i vg) u^i = z^(lo) * sum_i f_i z^((i - start) vg) u^(i)
    ustart = power_int_trunc(u, f.start, n)
    out = [Fraction(0)] * n
    acc = ustart  # u^i
    for idx, fi in enumerate(f.coeffs):
        shift = idx * vg
        if shift >= n:
            break
        if fi:
            for k in range(n - shift):
                if acc[k]:
                    out[shift + k] = out[shift + k] + fi * acc[k]
        if idx + 1 < len(f.coeffs) and (idx + 1) * vg < n:
            acc = mul_trunc(acc, u, n)
    return LaurentSeries(out, lo, trunc)


def _compose_poly(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    result = LaurentSeries.zero(None)
    power = LaurentSeries.one() if f.start >= 0 else None
    if power is None:
        raise SeriesError("exact composition with poles needs a truncated inner series")
    power = g ** f.start
    for c in f.coeffs:
        if c:
            result = result + power.scale(c)
        power = power * g
    return result


def power_int_trunc(u: Sequence, k: int, n: int) -> List:
    """u^k (k any integer) to n terms, for a power series with u[0] invertible."""
    if k >= 0:
        out = [Fraction(0)] * n
        if n:
            out[0] = Fraction(1)
        base = list(u[:n])
        while k:
            if k & 1:
                out = mul_trunc(out, base, n)
            k >>= 1
            if k:
                base = mul_trunc(base, base, n)
        return out
    return power_int_trunc(inv_trunc(u, n), -k, n)


def revert(f: LaurentSeries) -> LaurentSeries:
    """Compositional inverse of f = c1 z + O(z^2) by Newton iteration."""
    if f.coeff(0) or (f.coeffs and f.start < 0):
        raise SeriesError("reversion needs f = c1 z + O(z^2)")
    c1 = f.coeff(1)
    if not c1:
        raise SeriesError("reversion needs a nonzero linear coefficient")
    if f.trunc is None:
        raise SeriesError("reversion of an exact polynomial needs an explicit truncation")
    n = f.trunc
    fl = f.power_list(n)
    fd = _deriv(fl)
    g = [Fraction(0), 1 / c1][:n]
    prec = 2
    while prec < n:
        prec = min(2 * prec, n)
        gg = (g + [Fraction(0)] * prec)[:prec]
        fg = compose_trunc(fl[:prec], gg, prec)
        fg[1] = fg[1] - 1
        fpg = compose_trunc(fd[:prec], gg, prec)
        corr = mul_trunc(fg, inv_trunc(fpg, prec), prec)
        g = [gg[i] - corr[i] for i in range(prec)]
    return LaurentSeries(g[:n], 0, n)


def lagrange_revert(f: LaurentSeries, n: int) -> LaurentSeries:
    """Reversion through [z^k] g = (1/k) [w^(k-1)] (w/f(w))^k; slow, for checks."""
    u = [f.coeff(i + 1) for i in range(n - 1)]
    w_over_f = inv_trunc(u, n - 1)
    out = [Fraction(0)] * n
    for k in range(1, n):
        out[k] = power_int_trunc(w_over_f, k, k)[k - 1] / k
    return LaurentSeries(out, 0, n)


# ---------------------------------------------------------------------------
# elementary functions


def _require_positive_order(f: LaurentSeries, name: str) -> int:
    if f.trunc is None:
        raise SeriesError(f"{name} of an exact polynomial needs an explicit truncation")
    if f.coeffs and f.start < 1:
        raise SeriesError(f"{name} requires ord(F) >= 1")
    if f.trunc < 1:
        raise TruncationError(f"{name}: constant term of F is not known")
    return f.trunc


def exp(f: LaurentSeries) -> LaurentSeries:
    n = _require_positive_order(f, "exp")
    return LaurentSeries(exp_trunc(f.power_list(n), n), 0, n)


def log1p(f: LaurentSeries) -> LaurentSeries:
    n = _require_positive_order(f, "log1p")
    a = f.power_list(n)
    one_plus = [Fraction(1)] + a[1:]
    d = mul_trunc(_deriv(a), inv_trunc(one_plus, n), n - 1)
    return LaurentSeries(_integ(d), 0, n)


def arctanh(f: LaurentSeries) -> LaurentSeries:
    n = _require_positive_order(f, "arctanh")
    a = f.power_list(n)
    sq = mul_trunc(a, a, n)
    den = [Fraction(1) - sq[0]] + [-x for x in sq[1:]]
    d = mul_trunc(_deriv(a), inv_trunc(den, n), n - 1)
    return LaurentSeries(_integ(d), 0, n)


def power_unit(f: LaurentSeries, r: Fraction) -> LaurentSeries:
    """f^r for a series with constant term 1 and rational r."""
    if f.trunc is None:
        raise SeriesError("rational power of an exact polynomial needs an explicit truncation")
    if (f.coeffs and f.start < 0) or f.coeff(0) != 1:
        raise SeriesError("rational powers need a series of the form 1 + O(z)")
    n = f.trunc
    return LaurentSeries(power_one_trunc(f.power_list(n), Fraction(r), n), 0, n)


def sqrt(f: LaurentSeries) -> LaurentSeries:
    return power_unit(f, Fraction(1, 2))


def elementary(kind: str, f: LaurentSeries) -> LaurentSeries:
    table = {"sqrt": sqrt, "log1p": log1p, "exp": exp, "arctanh": arctanh}
    if kind not in table:
        raise SeriesError(f"unknown elementary function {kind!r}")
    return table[kind](f)


def z_times_root(f: LaurentSeries, k: int) -> LaurentSeries:
    """The series g = z + O(z^2) with g^k = f, for f = z^k (1 + O(z))."""
    if f.coeffs and f.start < k or f.coeff(k) != 1:
        raise SeriesError(f"expected a series of the form z^{k} (1 + O(z))")
    return power_unit(f.shift(-k), Fraction(1, k)).shift(1)


# ---------------------------------------------------------------------------
# flows of vector fields -sum a_k z^(k+1) d/dz


def flow_of_field(a: Sequence, trunc: int, time: Scalar = 1) -> LaurentSeries:
    """Time-t flow applied to z for the field v(z) d/dz, v = -sum_k a_k z^(k+1).

    ``a[0]`` is a_1.  Computed as the Lie series sum_n t^n V^n(z) / n!,
    which is exact because V raises the order by at least one.
    """
    v = [Fraction(0)] * trunc
    for k, ak in enumerate(a, start=1):
        if k + 1 < trunc and ak:
            v[k + 1] = -_fix(ak)
    term = [Fraction(0)] * trunc
    if trunc > 1:
        term[1] = Fraction(1)
    total = list(term)
    n = 0
    tn = Fraction(1)
    while any(term):
        n += 1
        dterm = _deriv(term) + [Fraction(0)]
        term = mul_trunc(v, dterm, trunc)
        tn = tn * time / n
        total = [total[i] + tn * term[i] for i in range(trunc)]
    return LaurentSeries(total, 0, trunc)


def field_coeffs_from_flow(f: LaurentSeries, kmax: int) -> List:
    """Solve for a_1..a_kmax with flow_of_field(a) = f to the needed order."""
    if f.coeff(0) or f.coeff(1) != 1:
        raise SeriesError("expected a series of the form z + O(z^2)")
    a: List = []
    for k in range(1, kmax + 1):
        approx = flow_of_field(a + [0], k + 2)
        a.append(-(f.coeff(k + 1) - approx.coeff(k + 1)))
    return a
