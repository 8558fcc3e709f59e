"""Heisenberg-Virasoro generators acting on polynomials in t_1, t_2, ... .

Elementary generators:

* ``MulT(k)``: multiplication by t_k
* ``DerT(k)``: d/dt_k
* ``Heis(m)``: J_m = d/dt_m for m > 0, 0 for m = 0, |m| t_|m| for m < 0
* ``Vir(m)``: L_m = 1/2 sum_{a+b=-m} a b t_a t_b + sum_k k t_k d/dt_{k+m}
  + 1/2 sum_{a+b=m} d^2/dt_a dt_b  (all indices >= 1)
* ``Const(c)``: multiplication by a scalar

An :class:`OperatorExpr` is a sum of ordered products.  A factor of a
product is either an elementary generator or a :class:`LinearOp` (a finite
linear combination of elementary generators); products are applied right to
left with no reordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .scalars import Scalar, to_text
from .tpoly import Mono, TPolynomial, accumulate, mono_degree


@dataclass(frozen=True)
class MulT:
    k: int

    @property
    def degree(self) -> int:
        return self.k


@dataclass(frozen=True)
class DerT:
    k: int

    @property
    def degree(self) -> int:
        return -self.k


@dataclass(frozen=True)
class Heis:
    m: int

    @property
    def degree(self) -> int:
        return -self.m


@dataclass(frozen=True)
class Vir:
    m: int

    @property
    def degree(self) -> int:
        return -self.m


@dataclass(frozen=True)
class Const:
    c: Scalar

    @property
    def degree(self) -> int:
        return 0


ElementaryOp = Union[MulT, DerT, Heis, Vir, Const]


def _lowering(op: ElementaryOp) -> int:
    """How far the operator lowers the degree (0 for raising/neutral ones)."""
    return max(0, -op.degree)


class LinearOp:
    """Finite linear combination sum_i c_i op_i of elementary generators."""

    __slots__ = ("pieces", "min_degree", "max_degree", "label")

    def __init__(self, pieces: Iterable[Tuple[Scalar, ElementaryOp]], label: str = ""):
        merged: Dict[ElementaryOp, Scalar] = {}
        for c, op in pieces:
            if isinstance(op, Heis) and op.m == 0:
                continue
            merged[op] = merged.get(op, 0) + c
        self.pieces = tuple((c, op) for op, c in merged.items() if c)
        degs = [op.degree for _, op in self.pieces] or [0]
        self.min_degree = min(degs)
        self.max_degree = max(degs)
        self.label = label

    def __repr__(self) -> str:
        return self.label or " + ".join(f"({to_text(c)}){_op_text(op)}" for c, op in self.pieces)


Factor = Union[ElementaryOp, LinearOp]


def _factor_min_degree(f: Factor) -> int:
    return f.min_degree if isinstance(f, LinearOp) else f.degree


def _op_text(op: ElementaryOp) -> str:
    if isinstance(op, MulT):
        return f"t{op.k}"
    if isinstance(op, DerT):
        return f"d{op.k}"
    if isinstance(op, Heis):
        return f"J{op.m}"
    if isinstance(op, Vir):
        return f"L{op.m}"
    return f"[{to_text(op.c)}]"


class OperatorExpr:
    """Sum of scalar multiples of ordered products of factors."""

    def __init__(self, terms: Iterable[Tuple[Scalar, Sequence[Factor]]] = ()):
        self.terms: List[Tuple[Scalar, Tuple[Factor, ...]]] = [(c, tuple(fs)) for c, fs in terms if c]

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(self.terms + other.terms)

    def scale(self, c: Scalar) -> "OperatorExpr":
        return OperatorExpr((c * k, fs) for k, fs in self.terms)

    def compose(self, other: "OperatorExpr") -> "OperatorExpr":
        """self o other (other applied first)."""
        return OperatorExpr((a * b, fa + fb) for a, fa in self.terms for b, fb in other.terms)

    @classmethod
    def of(cls, *factors: Factor, coeff: Scalar = 1) -> "OperatorExpr":
        return cls([(coeff, factors)])

    def expand(self) -> List[Tuple[Scalar, Tuple[ElementaryOp, ...]]]:
        """Flatten linear-combination factors into products of elementary generators."""
        out: List[Tuple[Scalar, Tuple[ElementaryOp, ...]]] = []
        for c, fs in self.terms:
            partial: List[Tuple[Scalar, Tuple[ElementaryOp, ...]]] = [(c, ())]
            for f in fs:
                pieces = f.pieces if isinstance(f, LinearOp) else ((1, f),)
                partial = [(a * b, ops + (op,)) for a, ops in partial for b, op in pieces]
            out.extend(partial)
        return out

    def dump(self) -> List[str]:
        lines = []
        for c, fs in self.terms:
            lines.append(f"({to_text(c)}) " + " . ".join(repr(f) if isinstance(f, LinearOp) else _op_text(f) for f in fs))
        return lines


# ---------------------------------------------------------------------------
# elementary actions on term dictionaries


Terms = Dict[Mono, Scalar]


def _with(m: Mono, changes: Dict[int, int]) -> Mono:
    d = dict(m)
    for i, delta in changes.items():
        e = d.get(i, 0) + delta
        if e:
            d[i] = e
        else:
            d.pop(i, None)
    return tuple(sorted(d.items()))


def _mul_t(k: int, terms: Terms, out: Terms, scale: Scalar) -> None:
    for m, c in terms.items():
        accumulate(out, _with(m, {k: 1}), c * scale)


def _der_t(k: int, terms: Terms, out: Terms, scale: Scalar) -> None:
    for m, c in terms.items():
        for i, e in m:
            if i == k:
                accumulate(out, _with(m, {k: -1}), c * (e * scale))
                break


def _heis(m: int, terms: Terms, out: Terms, scale: Scalar) -> None:
    if m > 0:
        _der_t(m, terms, out, scale)
    elif m < 0:
        _mul_t(-m, terms, out, scale * (-m))


def _vir(mm: int, terms: Terms, out: Terms, scale: Scalar) -> None:
    half = Fraction(1, 2)
    # quadratic multiplication part
    if mm <= -2:
        n = -mm
        quad: List[Tuple[Dict[int, int], Fraction]] = []
        for a in range(1, n):
            b = n - a
            if a < b:
                quad.append(({a: 1, b: 1}, Fraction(a * b)))
            elif a == b:
                quad.append(({a: 2}, half * a * a))
        for m, c in terms.items():
            for change, w in quad:
                accumulate(out, _with(m, change), c * (w * scale))
    for m, c in terms.items():
        # first-order part: sum_k k t_k d/dt_{k+mm}
        for j, e in m:
            k = j - mm
            if k >= 1:
                if k == j:
                    accumulate(out, m, c * (k * e * scale))
                else:
                    accumulate(out, _with(m, {j: -1, k: 1}), c * (k * e * scale))
        # second-order part: 1/2 sum_{a+b=mm} d_a d_b
        if mm >= 2 and len(m):
            exps = dict(m)
            for a, ea in m:
                b = mm - a
                if b < a:
                    continue
                if b == a:
                    if ea >= 2:
                        accumulate(out, _with(m, {a: -2}), c * (half * ea * (ea - 1) * scale))
                else:
                    eb = exps.get(b, 0)
                    if eb:
                        accumulate(out, _with(m, {a: -1, b: -1}), c * (ea * eb * scale))


def apply_elementary(op: ElementaryOp, terms: Terms, out: Terms, scale: Scalar = 1) -> None:
    """out += scale * op(terms)."""
    if isinstance(op, Vir):
        _vir(op.m, terms, out, scale)
    elif isinstance(op, Heis):
        _heis(op.m, terms, out, scale)
    elif isinstance(op, MulT):
        _mul_t(op.k, terms, out, scale)
    elif isinstance(op, DerT):
        _der_t(op.k, terms, out, scale)
    elif isinstance(op, Const):
        for m, c in terms.items():
            accumulate(out, m, c * (op.c * scale))
    else:  # pragma: no cover - defensive
        raise TypeError(f"unknown operator {op!r}")


def _cap(terms: Terms, cap: Optional[int]) -> Terms:
    if cap is None:
        return terms
    return {m: c for m, c in terms.items() if mono_degree(m) <= cap}


def apply_factor(f: Factor, terms: Terms, cap: Optional[int] = None) -> Terms:
    if not terms:
        return {}
    maxd = max(mono_degree(m) for m in terms)
    mind = min(mono_degree(m) for m in terms)
    out: Terms = {}
    pieces = f.pieces if isinstance(f, LinearOp) else ((1, f),)
    for c, op in pieces:
        if _lowering(op) > maxd:
            continue  # annihilates every input monomial
        if cap is not None and mind + op.degree > cap:
            continue
        apply_elementary(op, terms, out, c)
    return _cap(out, cap)


def apply(o: Union[OperatorExpr, Factor], p: TPolynomial, deg_cap: Optional[int] = None) -> TPolynomial:
    """Exact action of o on p, discarding output monomials of degree > deg_cap."""
    if not isinstance(o, OperatorExpr):
        o = OperatorExpr.of(o)
    memo: Dict[Tuple, Terms] = {}
    result: Terms = {}
    base = p.terms
    for coef, factors in o.terms:
        # output cap for the suffix starting at position i
        caps: List[Optional[int]] = []
        running = 0
        for f in factors:
            caps.append(None if deg_cap is None else deg_cap - running)
            running += _factor_min_degree(f)
        cur = base
        for i in range(len(factors) - 1, -1, -1):
            key = (tuple(id(f) for f in factors[i:]), caps[i])
            hit = memo.get(key)
            if hit is None:
                hit = apply_factor(factors[i], cur, caps[i])
                memo[key] = hit
            cur = hit
            if not cur:
                break
        if not factors:
            cur = _cap(base, deg_cap)
        for m, c in cur.items():
            accumulate(result, m, c * coef)
    return TPolynomial._raw(result)


def commutator_on(a, b, p: TPolynomial, deg_cap: Optional[int] = None) -> TPolynomial:
    """a(b p) - b(a p)."""
    return apply(a, apply(b, p, None), deg_cap) - apply(b, apply(a, p, None), deg_cap)


# ---------------------------------------------------------------------------
# convenience constructors


def J(m: int) -> LinearOp:
    return LinearOp([(1, Heis(m))], label=f"J{m}")


def L(m: int) -> LinearOp:
    return LinearOp([(1, Vir(m))], label=f"L{m}")


def lin(pieces: Iterable[Tuple[Scalar, ElementaryOp]], label: str = "") -> LinearOp:
    return LinearOp(pieces, label)
