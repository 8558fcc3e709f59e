"""Exact coefficients: plain rationals and the parameter field Q(p, s).

The parameters p, q and sqrt(p + q) are encoded by two generators p and s
with the rewriting rule q = s^2 - p, so every coefficient becomes an honest
bivariate rational function.

Internally a :class:`ParamScalar` is stored as ``num / den`` where ``num`` is
a Laurent polynomial (negative exponents allowed in p and s) and ``den`` is a
polynomial that is divisible by neither p nor s, monic in its lex-leading
term and coprime to ``num``.  This is a canonical form, and almost every
coefficient that shows up in practice has ``den == 1``, which keeps the hot
arithmetic paths free of gcd computations.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

Monomial = Tuple[int, int]  # (power of p, power of s)
PolyDict = Dict[Monomial, Fraction]

ONE_POLY: PolyDict = {(0, 0): Fraction(1)}


class ScalarError(ArithmeticError):
    """Raised for invalid scalar operations (bad specialization, parse error)."""


# ---------------------------------------------------------------------------
# sparse bivariate (Laurent) polynomial kernels


def _padd(a: PolyDict, b: PolyDict, sign: int = 1) -> PolyDict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m)
        if v is None:
            out[m] = c if sign == 1 else -c
        else:
            v = v + c if sign == 1 else v - c
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def _pmul(a: PolyDict, b: PolyDict) -> PolyDict:
    if len(a) > len(b):
        a, b = b, a
    out: PolyDict = {}
    get = out.get
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            m = (i1 + i2, j1 + j2)
            out[m] = get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _pscale(a: PolyDict, c: Fraction) -> PolyDict:
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def _pshift(a: PolyDict, di: int, dj: int) -> PolyDict:
    return {(i + di, j + dj): c for (i, j), c in a.items()}


def _min_exponents(a: PolyDict) -> Monomial:
    return (min(i for i, _ in a), min(j for _, j in a))


def _lead(a: PolyDict) -> Monomial:
    return max(a)


# --- univariate polynomials over Q in p, dense lists low -> high -----------


def _utrim(a: List[Fraction]) -> List[Fraction]:
    while a and not a[-1]:
        a.pop()
    return a


def _udivmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return [], _utrim(a)
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lb
        q[k] = c
        if c:
            for i, bi in enumerate(b):
                a[k + i] -= c * bi
    return _utrim(q), _utrim(a[:db])


def _ugcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]


def _umul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _utrim(out)


def _usub(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _utrim([Fraction(x) for x in out])


def _uexact_div(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    q, r = _udivmod(a, b)
    if r:
        raise ScalarError("inexact univariate division")
    return q


# --- bivariate as {s-power: univariate-in-p} --------------------------------

Recursive = Dict[int, List[Fraction]]


def _to_rec(a: PolyDict) -> Recursive:
    out: Recursive = {}
    for (i, j), c in a.items():
        row = out.setdefault(j, [])
        if len(row) <= i:
            row.extend([Fraction(0)] * (i + 1 - len(row)))
        row[i] = c
    return {j: _utrim(r) for j, r in out.items() if _utrim(r)}


def _from_rec(a: Recursive) -> PolyDict:
    return {(i, j): c for j, row in a.items() for i, c in enumerate(row) if c}


def _rdeg(a: Recursive) -> int:
    return max(a) if a else -1


def _rcontent(a: Recursive) -> List[Fraction]:
    g: List[Fraction] = []
    for row in a.values():
        g = _ugcd(g, row) if g else _ugcd(row, [])
        if len(g) == 1:
            break
    return g


def _rdiv_content(a: Recursive, c: List[Fraction]) -> Recursive:
    return {j: _uexact_div(row, c) for j, row in a.items()}


def _rprem(a: Recursive, b: Recursive) -> Recursive:
    """Pseudo-remainder of a by b with respect to s."""
    db = _rdeg(b)
    lb = b[db]
    r = dict(a)
    while r and _rdeg(r) >= db:
        dr = _rdeg(r)
        lr = r[dr]
        shift = dr - db
        new: Recursive = {}
        for j, row in r.items():
            new[j] = _umul(row, lb)
        for j, row in b.items():
            prod = _umul(row, lr)
            cur = new.get(j + shift, [])
            new[j + shift] = _usub(cur, prod)
        r = {j: row for j, row in new.items() if row}
    return r


def _rprimitive(a: Recursive) -> Recursive:
    return _rdiv_content(a, _rcontent(a))


def poly_gcd(a: PolyDict, b: PolyDict) -> PolyDict:
    """Monic (lex-leading coefficient 1) gcd of two polynomials in Q[p, s]."""
    if not a:
        return _monic(b) if b else {}
    if not b:
        return _monic(a)
    ra, rb = _to_rec(a), _to_rec(b)
    ca, cb = _rcontent(ra), _rcontent(rb)
    c = _ugcd(ca, cb)
    ra, rb = _rdiv_content(ra, ca), _rdiv_content(rb, cb)
    if _rdeg(ra) < _rdeg(rb):
        ra, rb = rb, ra
    while rb and _rdeg(rb) > 0:
        r = _rprem(ra, rb)
        ra, rb = rb, (_rprimitive(r) if r else {})
    if rb:  # nonzero of s-degree 0: primitive constant in Q[p], so gcd is trivial
        g: Recursive = {0: [Fraction(1)]}
    else:
        g = ra
    g = {j: _umul(row, c) for j, row in g.items()}
    return _monic(_from_rec(g))


def _monic(a: PolyDict) -> PolyDict:
    lc = a[_lead(a)]
    if lc == 1:
        return a
    return {m: c / lc for m, c in a.items()}


def poly_exact_div(a: PolyDict, b: PolyDict) -> PolyDict:
    """Exact quotient a / b in Q[p, s]; raises if b does not divide a."""
    if not a:
        return {}
    ra, rb = _to_rec(a), _to_rec(b)
    db = _rdeg(rb)
    lb = rb[db]
    q: Recursive = {}
    while ra:
        dr = _rdeg(ra)
        if dr < db:
            raise ScalarError("inexact polynomial division")
        c = _uexact_div(ra[dr], lb)
        shift = dr - db
        q[shift] = c
        for j, row in rb.items():
            cur = ra.get(j + shift, [])
            ra[j + shift] = _usub(cur, _umul(row, c))
        ra = {j: row for j, row in ra.items() if row}
    return _from_rec(q)


# ---------------------------------------------------------------------------


Number = Union[int, Fraction]


class ParamScalar:
    """Exact element of Q(p, s) with q = s^2 - p and s = sqrt(p + q)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: PolyDict, den: PolyDict | None = None, *, _canonical: bool = False):
        if _canonical:
            self.num = num
            self.den = den if den is not None else ONE_POLY
        else:
            n, d = _normalize(num, den if den is not None else ONE_POLY)
            self.num, self.den = n, d
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "ParamScalar":
        c = Fraction(c)
        return cls({(0, 0): c} if c else {}, _canonical=True)

    @classmethod
    def p(cls) -> "ParamScalar":
        return cls({(1, 0): Fraction(1)}, _canonical=True)

    @classmethod
    def s(cls) -> "ParamScalar":
        return cls({(0, 1): Fraction(1)}, _canonical=True)

    @classmethod
    def q(cls) -> "ParamScalar":
        return cls({(0, 2): Fraction(1), (1, 0): Fraction(-1)}, _canonical=True)

    @staticmethod
    def coerce(x: "Scalar") -> "ParamScalar":
        if isinstance(x, ParamScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return ParamScalar.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ParamScalar")

    # -- predicates -----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.den == ONE_POLY and all(m == (0, 0) for m in self.num)

    def constant_value(self) -> Fraction:
        if not self.num:
            return Fraction(0)
        if self.den != ONE_POLY or set(self.num) != {(0, 0)}:
            raise ScalarError("not a constant")
        return self.num[(0, 0)]

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            if self.den == ONE_POLY:
                return ParamScalar(_padd(self.num, {(0, 0): Fraction(other)}), _canonical=True)
            other = ParamScalar.const(other)
        elif not isinstance(other, ParamScalar):
            return NotImplemented
        return _add(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__add__(-other)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return _add(self, other, -1)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return ParamScalar({m: -c for m, c in self.num.items()}, self.den, _canonical=True)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ParamScalar({}, _canonical=True)
            other = Fraction(other)
            return ParamScalar({m: c * other for m, c in self.num.items()}, self.den, _canonical=True)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        if not self.num or not other.num:
            return ParamScalar({}, _canonical=True)
        num = _pmul(self.num, other.num)
        if self.den == ONE_POLY and other.den == ONE_POLY:
            return ParamScalar(num, _canonical=True)
        return ParamScalar(num, _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "ParamScalar":
        if not self.num:
            raise ZeroDivisionError("ParamScalar division by zero")
        i0, j0 = _min_exponents(self.num)
        core = _pshift(self.num, -i0, -j0)
        lc = core[_lead(core)]
        new_den = {m: c / lc for m, c in core.items()}
        new_num = _pshift(_pscale(self.den, 1 / lc), -i0, -j0)
        return ParamScalar(new_num, new_den, _canonical=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("ParamScalar division by zero")
            inv = 1 / Fraction(other)
            return ParamScalar({m: c * inv for m, c in self.num.items()}, self.den, _canonical=True)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ParamScalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ParamScalar.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.num
            return self.den == ONE_POLY and self.num == {(0, 0): Fraction(other)}
        if isinstance(other, ParamScalar):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if not self.num:
                self._hash = hash(0)
            elif self.den == ONE_POLY and set(self.num) == {(0, 0)}:
                self._hash = hash(self.num[(0, 0)])
            else:
                self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    # -- views ------------------------------------------------------------
    def fraction_parts(self) -> Tuple[PolyDict, PolyDict]:
        """Return (numerator, denominator) as genuine polynomials in p and s."""
        if not self.num:
            return {}, dict(ONE_POLY)
        i0, j0 = _min_exponents(self.num)
        di, dj = max(0, -i0), max(0, -j0)
        return _pshift(self.num, di, dj), _pshift(self.den, di, dj)

    def specialize(self, p0: Number, s0: Number) -> Fraction:
        return specialize(self, p0, s0)

    def weight(self) -> Fraction:
        return weight_of(self)

    def to_text(self) -> str:
        return to_text(self)

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"ParamScalar({to_text(self)!r})"


Scalar = Union[int, Fraction, ParamScalar]


def _add(x: ParamScalar, y: ParamScalar, sign: int) -> ParamScalar:
    if x.den == y.den:
        num = _padd(x.num, y.num, sign)
        if x.den == ONE_POLY:
            return ParamScalar(num, _canonical=True)
        return ParamScalar(num, x.den)
    num = _padd(_pmul(x.num, y.den), _pmul(y.num, x.den), sign)
    return ParamScalar(num, _pmul(x.den, y.den))


def _normalize(num: PolyDict, den: PolyDict) -> Tuple[PolyDict, PolyDict]:
    num = {m: Fraction(c) for m, c in num.items() if c}
    den = {m: Fraction(c) for m, c in den.items() if c}
    if not den:
        raise ZeroDivisionError("ParamScalar with zero denominator")
    if not num:
        return {}, ONE_POLY
    # move the monomial content of the denominator into the numerator
    i0, j0 = _min_exponents(den)
    if i0 or j0:
        den = _pshift(den, -i0, -j0)
        num = _pshift(num, -i0, -j0)
    if len(den) == 1:
        c = den[(0, 0)]
        return ({m: v / c for m, v in num.items()} if c != 1 else num), ONE_POLY
    ni, nj = _min_exponents(num)
    core = _pshift(num, -ni, -nj)
    g = poly_gcd(core, den)
    if len(g) > 1:
        core = poly_exact_div(core, g)
        den = poly_exact_div(den, g)
    lc = den[_lead(den)]
    if lc != 1:
        den = {m: c / lc for m, c in den.items()}
        core = {m: c / lc for m, c in core.items()}
    num = _pshift(core, ni, nj)
    if len(den) == 1:
        return num, ONE_POLY
    return num, den


# ---------------------------------------------------------------------------
# specialization, weights


def _eval_poly(a: PolyDict, p0: Fraction, s0: Fraction) -> Fraction:
    total = Fraction(0)
    for (i, j), c in a.items():
        if (i < 0 and not p0) or (j < 0 and not s0):
            raise ScalarError("negative power of a parameter specialized to 0")
        total += c * p0**i * s0**j
    return total


def specialize(x: Scalar, p0: Number, s0: Number) -> Fraction:
    """Substitute p -> p0 and s -> s0 (so q -> s0^2 - p0)."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    p0, s0 = Fraction(p0), Fraction(s0)
    if not x.num:
        return Fraction(0)
    num, den = x.fraction_parts()
    d = _eval_poly(den, p0, s0)
    if not d:
        raise ScalarError(f"denominator vanishes at p={p0}, s={s0}")
    return _eval_poly(num, p0, s0) / d


def _weighted_degrees(a: PolyDict) -> set:
    return {2 * i + j for i, j in a}


def weight_of(x: Scalar) -> Fraction:
    """Homogeneity weight w with x(l p, l q) = l^w x(p, q).

    Under q = s^2 - p this is half the weighted degree with deg p = 2 and
    deg s = 1.
    """
    if isinstance(x, (int, Fraction)):
        return Fraction(0)
    if not x.num:
        raise ScalarError("weight of zero is undefined")
    dn, dd = _weighted_degrees(x.num), _weighted_degrees(x.den)
    if len(dn) != 1 or len(dd) != 1:
        raise ScalarError("scalar is not homogeneous")
    return Fraction(dn.pop() - dd.pop(), 2)


# ---------------------------------------------------------------------------
# text form


def _int_content(a: PolyDict) -> Fraction:
    """Rational c such that a / c has coprime integer coefficients and positive lead."""
    dens = 1
    for c in a.values():
        dens = dens * c.denominator // math.gcd(dens, c.denominator)
    g = 0
    for c in a.values():
        g = math.gcd(g, int(c * dens))
    content = Fraction(g, dens)
    if a[_lead(a)] < 0:
        content = -content
    return content


def _poly_text(a: PolyDict) -> str:
    parts = []
    for m in sorted(a, key=lambda m: (-m[0], -m[1])):
        c = a[m]
        i, j = m
        factors = []
        if i:
            factors.append("p" if i == 1 else f"p^{i}")
        if j:
            factors.append("s" if j == 1 else f"s^{j}")
        mono = "*".join(factors)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def to_text(x: Scalar) -> str:
    """Deterministic text form such as ``(-1/128)*(p^2 - p*s^2 + s^4)/(s^2)``."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if not x.num:
        return "0"
    num, den = x.fraction_parts()
    cn, cd = _int_content(num), _int_content(den)
    num = {m: c / cn for m, c in num.items()}
    den = {m: c / cd for m, c in den.items()}
    c = cn / cd
    num_is_one = num == ONE_POLY
    den_is_one = den == ONE_POLY
    if num_is_one and den_is_one:
        return str(c)
    out = ""
    if c != 1:
        out = f"({c})*"
    out += f"({_poly_text(num)})"
    if not den_is_one:
        out += f"/({_poly_text(den)})"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([pqs])|(\*\*|[-+*/^()]))")


def parse(text: str) -> ParamScalar:
    """Parse an arithmetic expression in p, q, s with rational constants."""
    tokens: List[str] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ScalarError(f"unexpected character at {pos} in {text!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    parser = _Parser(tokens)
    value = parser.expr()
    if parser.i != len(tokens):
        raise ScalarError(f"trailing input in {text!r}")
    return value


class _Parser:
    def __init__(self, tokens: List[str]):
        self.t = tokens
        self.i = 0

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ScalarError(f"expected {expected!r}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self) -> ParamScalar:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> ParamScalar:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self) -> ParamScalar:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> ParamScalar:
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            if self.peek() == "(":
                self.take()
                neg = self.peek() == "-"
                if neg:
                    self.take()
                    sign = -sign
                exp = int(self.take())
                self.take(")")
            else:
                exp = int(self.take())
            return base ** (sign * exp)
        return base

    def atom(self) -> ParamScalar:
        tok = self.peek()
        if tok == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if tok == "p":
            self.take()
            return ParamScalar.p()
        if tok == "s":
            self.take()
            return ParamScalar.s()
        if tok == "q":
            self.take()
            return ParamScalar.q()
        if tok is not None and tok.isdigit():
            self.take()
            return ParamScalar.const(int(tok))
        raise ScalarError(f"unexpected token {tok!r}")


# ---------------------------------------------------------------------------
# helpers shared by the rest of the package


def is_zero(x: Scalar) -> bool:
    return not x


def random_points(count: int, seed: int = 0, avoid_degenerate: bool = True) -> List[Tuple[Fraction, Fraction]]:
    """Random rational (p, s) points with p, q = s^2 - p and s all nonzero."""
    rng = random.Random(seed)
    out: List[Tuple[Fraction, Fraction]] = []
    while len(out) < count:
        p = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        s = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
        if avoid_degenerate and (not p or not s or s * s == p or s * s == 2 * p):
            continue
        out.append((p, s))
    return out


def specialize_all(values: Iterable[Scalar], p0: Number, s0: Number) -> List[Fraction]:
    return [specialize(v, p0, s0) for v in values]
