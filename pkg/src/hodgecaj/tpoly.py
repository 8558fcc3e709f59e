"""Sparse polynomials in the times t_1, t_2, ... and hbar-graded families of them.

A monomial is a tuple of ``(index, power)`` pairs sorted by index, e.g.
``((1, 2), (3, 1))`` is t_1^2 t_3.  Its degree uses deg t_k = k.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from .scalars import Scalar, parse, to_text

Mono = Tuple[Tuple[int, int], ...]
ONE: Mono = ()


class FockError(ValueError):
    """Invalid polynomial or graded-series operation."""


def mono(*pairs: Tuple[int, int]) -> Mono:
    """Canonical monomial from (index, power) pairs (repeats are merged)."""
    acc: Dict[int, int] = {}
    for i, e in pairs:
        if i < 1 or e < 0:
            raise FockError(f"bad monomial factor t_{i}^{e}")
        if e:
            acc[i] = acc.get(i, 0) + e
    return tuple(sorted(acc.items()))


def mono_from_indices(indices: Iterable[int]) -> Mono:
    return mono(*((i, 1) for i in indices))


def mono_degree(m: Mono) -> int:
    return sum(i * e for i, e in m)


def mono_count(m: Mono) -> int:
    """Number of t-factors (total power)."""
    return sum(e for _, e in m)


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def mono_text(m: Mono) -> str:
    if not m:
        return "1"
    return "*".join(f"t{i}" if e == 1 else f"t{i}^{e}" for i, e in m)


def mono_parse(text: str) -> Mono:
    text = text.strip()
    if text in ("", "1"):
        return ONE
    pairs = []
    for factor in text.split("*"):
        factor = factor.strip()
        if "^" in factor:
            base, exp = factor.split("^")
        else:
            base, exp = factor, "1"
        if not base.startswith("t"):
            raise FockError(f"bad monomial factor {factor!r}")
        pairs.append((int(base[1:]), int(exp)))
    return mono(*pairs)


def _fix(c):
    return Fraction(c) if isinstance(c, int) else c


class TPolynomial:
    """Immutable sparse polynomial in t_1, t_2, ... ."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Mono, Scalar]] = None):
        self.terms: Dict[Mono, Scalar] = {m: _fix(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: Dict[Mono, Scalar]) -> "TPolynomial":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, c: Scalar) -> "TPolynomial":
        return cls({ONE: c})

    @classmethod
    def t(cls, k: int, c: Scalar = 1) -> "TPolynomial":
        return cls({mono((k, 1)): c})

    # -- inspection --------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Mono, Scalar]]:
        return iter(self.terms.items())

    def coefficient(self, m: Mono) -> Scalar:
        return self.terms.get(m, Fraction(0))

    def max_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((mono_degree(m) for m in self.terms), default=0)

    def homogeneous_part(self, n: int) -> "TPolynomial":
        return TPolynomial._raw({m: c for m, c in self.terms.items() if mono_degree(m) == n})

    def truncate_degree(self, cap: int) -> "TPolynomial":
        return TPolynomial._raw({m: c for m, c in self.terms.items() if mono_degree(m) <= cap})

    def variables(self) -> set:
        return {i for m in self.terms for i, _ in m}

    def __eq__(self, other) -> bool:
        if isinstance(other, TPolynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)) or hasattr(other, "num"):
            return self.terms == ({ONE: other} if other else {})
        return NotImplemented

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other: "TPolynomial") -> "TPolynomial":
        return TPolynomial._raw(add_terms(self.terms, other.terms))

    def __sub__(self, other: "TPolynomial") -> "TPolynomial":
        return TPolynomial._raw(add_terms(self.terms, other.terms, -1))

    def __neg__(self) -> "TPolynomial":
        return TPolynomial._raw({m: -c for m, c in self.terms.items()})

    def scale(self, c: Scalar) -> "TPolynomial":
        if not c:
            return TPolynomial()
        return TPolynomial._raw({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> "TPolynomial":
        if not isinstance(other, TPolynomial):
            return self.scale(other)
        return TPolynomial._raw(mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def mul_capped(self, other: "TPolynomial", cap: Optional[int]) -> "TPolynomial":
        return TPolynomial._raw(mul_terms(self.terms, other.terms, cap))

    def map_coeffs(self, fn: Callable[[Scalar], Scalar]) -> "TPolynomial":
        return TPolynomial({m: fn(c) for m, c in self.terms.items()})

    def substitute_linear(self, images: Dict[int, "TPolynomial"]) -> "TPolynomial":
        """Replace t_i by images[i] (variables absent from the map are kept)."""
        out = TPolynomial()
        cache: Dict[Tuple[int, int], TPolynomial] = {}
        for m, c in self.terms.items():
            term = TPolynomial.constant(c)
            for i, e in m:
                if i in images:
                    key = (i, e)
                    if key not in cache:
                        power = TPolynomial.constant(1)
                        for _ in range(e):
                            power = power * images[i]
                        cache[key] = power
                    term = term * cache[key]
                else:
                    term = term * TPolynomial({mono((i, e)): 1})
            out = out + term
        return out

    # -- text / JSON ------------------------------------------------------------
    def sorted_items(self) -> List[Tuple[Mono, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: (mono_degree(kv[0]), kv[0]))

    def to_json_obj(self) -> List[dict]:
        return [
            {"monomial": [list(pair) for pair in m], "coeff": to_text(c)}
            for m, c in self.sorted_items()
        ]

    @classmethod
    def from_json_obj(cls, obj: List[dict]) -> "TPolynomial":
        return cls({mono(*map(tuple, e["monomial"])): parse(e["coeff"]) for e in obj})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({to_text(c)})*{mono_text(m)}" for m, c in self.sorted_items())

    __repr__ = __str__


def add_terms(a: Dict[Mono, Scalar], b: Dict[Mono, Scalar], sign: int = 1) -> Dict[Mono, Scalar]:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m)
        nv = (c if sign == 1 else -c) if v is None else (v + c if sign == 1 else v - c)
        if nv:
            out[m] = nv
        elif v is not None:
            del out[m]
    return out


def accumulate(target: Dict[Mono, Scalar], m: Mono, c: Scalar) -> None:
    v = target.get(m)
    if v is None:
        target[m] = c
    else:
        v = v + c
        if v:
            target[m] = v
        else:
            del target[m]


def mul_terms(a: Dict[Mono, Scalar], b: Dict[Mono, Scalar], cap: Optional[int] = None) -> Dict[Mono, Scalar]:
    out: Dict[Mono, Scalar] = {}
    if cap is None:
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                accumulate(out, mono_mul(m1, m2), c1 * c2)
        return out
    da = {m: mono_degree(m) for m in a}
    db = {m: mono_degree(m) for m in b}
    for m1, c1 in a.items():
        d1 = da[m1]
        for m2, c2 in b.items():
            if d1 + db[m2] <= cap:
                accumulate(out, mono_mul(m1, m2), c1 * c2)
    return out


# ---------------------------------------------------------------------------


class GradedSeries:
    """Family of polynomials indexed by the power of hbar, known for levels 0..top."""

    __slots__ = ("levels", "top", "kdv_parity", "degree_rule")

    def __init__(
        self,
        levels: Dict[int, TPolynomial],
        top: Optional[int] = None,
        *,
        kdv_parity: bool = False,
        degree_rule: Optional[int] = None,
    ):
        self.levels = {k: v for k, v in levels.items()}
        self.top = max(self.levels, default=-1) if top is None else top
        self.kdv_parity = kdv_parity
        self.degree_rule = degree_rule

    def __getitem__(self, k: int) -> TPolynomial:
        if k > self.top:
            raise FockError(f"hbar level {k} not available (computed through {self.top})")
        return self.levels.get(k, TPolynomial())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        top = min(self.top, other.top)
        return all(self[k] == other[k] for k in range(top + 1))

    def truncated(self, top: int) -> "GradedSeries":
        return GradedSeries(
            {k: v for k, v in self.levels.items() if k <= top},
            min(top, self.top),
            kdv_parity=self.kdv_parity,
            degree_rule=self.degree_rule,
        )

    def map_coeffs(self, fn: Callable[[Scalar], Scalar]) -> "GradedSeries":
        return GradedSeries(
            {k: v.map_coeffs(fn) for k, v in self.levels.items()},
            self.top,
            kdv_parity=self.kdv_parity,
            degree_rule=self.degree_rule,
        )

    def check_invariants(self) -> List[str]:
        """Violations of the flags (empty list when all hold)."""
        problems = []
        if self.kdv_parity:
            for k, poly in self.levels.items():
                bad = [i for i in poly.variables() if i % 2 == 0]
                if bad:
                    problems.append(f"level {k}: even-index variables {sorted(bad)}")
        if self.degree_rule is not None:
            for k, poly in self.levels.items():
                if poly.max_degree() > (2 * self.degree_rule + 1) * k:
                    problems.append(f"level {k}: degree {poly.max_degree()} exceeds bound")
        return problems

    def add(self, other: "GradedSeries") -> "GradedSeries":
        top = min(self.top, other.top)
        return GradedSeries({k: self[k] + other[k] for k in range(top + 1)}, top)

    def mul(self, other: "GradedSeries", cap: Optional[int] = None) -> "GradedSeries":
        top = min(self.top, other.top)
        if cap is not None:
            top = min(top, cap)
        out = {}
        for k in range(top + 1):
            acc = TPolynomial()
            for j in range(k + 1):
                acc = acc + self[j] * other[k - j]
            out[k] = acc
        return GradedSeries(out, top)

    def to_json_obj(self) -> List[dict]:
        out = []
        for k in range(self.top + 1):
            for entry in self[k].to_json_obj():
                out.append({"hbar": k, **entry})
        return out

    @classmethod
    def from_json_obj(cls, obj: List[dict], top: Optional[int] = None) -> "GradedSeries":
        levels: Dict[int, Dict[Mono, Scalar]] = {}
        for e in obj:
            levels.setdefault(e["hbar"], {})[mono(*map(tuple, e["monomial"]))] = parse(e["coeff"])
        return cls({k: TPolynomial(v) for k, v in levels.items()}, top)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def graded_log(z: GradedSeries) -> GradedSeries:
    """F with exp(F) = Z levelwise, via k Z_k = sum_j j F_j Z_{k-j}."""
    if z[0] != TPolynomial.constant(1):
        raise FockError("graded_log needs level 0 equal to 1")
    f: Dict[int, TPolynomial] = {0: TPolynomial()}
    for k in range(1, z.top + 1):
        acc = z[k]
        for j in range(1, k):
            if f[j] and z[k - j]:
                acc = acc - (f[j] * z[k - j]).scale(Fraction(j, k))
        f[k] = acc
    return GradedSeries(f, z.top, kdv_parity=z.kdv_parity, degree_rule=z.degree_rule)


def graded_exp(f: GradedSeries) -> GradedSeries:
    if f[0]:
        raise FockError("graded_exp needs level 0 equal to 0")
    zs: Dict[int, TPolynomial] = {0: TPolynomial.constant(1)}
    for k in range(1, f.top + 1):
        acc = TPolynomial()
        for j in range(1, k + 1):
            if f[j] and zs[k - j]:
                acc = acc + (f[j] * zs[k - j]).scale(Fraction(j, k))
        zs[k] = acc
    return GradedSeries(zs, f.top, kdv_parity=f.kdv_parity, degree_rule=f.degree_rule)


def poly_from_text(entries: Iterable[Tuple[str, str]]) -> TPolynomial:
    """Build a polynomial from (monomial text, coefficient text) pairs."""
    out: Dict[Mono, Scalar] = {}
    for m, c in entries:
        accumulate(out, mono_parse(m), parse(c))
    return TPolynomial(out)


def monomials_up_to(max_degree: int, odd_only: bool = False) -> List[Mono]:
    """All monomials of degree <= max_degree (partitions), in a fixed order."""
    out: List[Mono] = []

    def rec(remaining: int, largest: int, acc: List[int]) -> None:
        out.append(mono_from_indices(acc))
        for part in range(min(remaining, largest), 0, -1):
            if odd_only and part % 2 == 0:
                continue
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(max_degree, max_degree, [])
    return sorted(set(out), key=lambda m: (mono_degree(m), m))
