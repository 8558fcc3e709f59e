"""Cut-and-join operators and the level-by-level recursion they drive.

Two variants are built for each alpha in {0, 1}:

``"W"``   (1/(2a+1)) sum_k J_{-2k-1} (L_{2k-2a} + delta_{k,a}/8)
``"W*"``  the cubic-in-J form

In ``"qp"`` mode every J_n, L_n is replaced by its conjugate under the
Virasoro group element attached to (p, q), which is a triangular
combination of J_m, L_m with coefficients read off the power table of
f_alpha.  Those combinations are infinite; each factor of a product is cut
at the largest index that can act nontrivially on the inputs it will meet
(the input window ``d_in``), so the truncated operator is exact on every
polynomial of degree at most ``D - 2a - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .curve import CurveData, PowerTable
from .operators import Const, Heis, LinearOp, OperatorExpr, Vir, apply
from .scalars import Scalar
from .tpoly import GradedSeries, Mono, TPolynomial, mono_count


class CAJError(ValueError):
    """Invalid cut-and-join request."""


# ---------------------------------------------------------------------------
# generator families


class Generators:
    """J_n and L_n, optionally conjugated by a power table, cut at an input window."""

    def __init__(self, table: Optional[PowerTable] = None, central: Scalar = 0):
        self.table = table
        self.central = central
        self._cache: Dict[Tuple, LinearOp] = {}

    @property
    def conjugated(self) -> bool:
        return self.table is not None

    def _check_window(self, n: int, d_in: int) -> None:
        if self.table is not None and d_in > self.table.max_window(n):
            raise CAJError(
                f"curve series too short: generator {n} needs window {d_in}, "
                f"table reaches {self.table.max_window(n)}"
            )

    def J(self, n: int, d_in: int) -> LinearOp:
        key = ("J", n, d_in)
        op = self._cache.get(key)
        if op is None:
            if self.table is None:
                pieces = [(Fraction(1), Heis(n))]
            else:
                self._check_window(n, d_in)
                pieces = [(self.table.rho(n, m), Heis(m)) for m in range(n, d_in + 1)]
            op = LinearOp(pieces, label=f"J{n}[{d_in}]")
            self._cache[key] = op
        return op

    def L(self, n: int, d_in: int, shift: Scalar = 0) -> LinearOp:
        """L_n + shift (plus the central constant at n = -2 when conjugated)."""
        key = ("L", n, d_in, shift)
        op = self._cache.get(key)
        if op is None:
            if self.table is None:
                pieces = [(Fraction(1), Vir(n))]
            else:
                self._check_window(n, d_in)
                pieces = [(self.table.sigma(n, m), Vir(m)) for m in range(n, d_in + 1)]
            constant = shift
            if n == -2 and self.table is not None:
                constant = constant + self.central
            if constant:
                pieces.append((constant, Const(Fraction(1))))
            op = LinearOp(pieces, label=f"L{n}[{d_in}]")
            self._cache[key] = op
        return op


# ---------------------------------------------------------------------------
# operator construction


@dataclass(frozen=True)
class CAJSpec:
    alpha: int
    variant: str = "W"
    mode: str = "base"
    curve: Optional[CurveData] = None
    order: int = 1

    def __post_init__(self):
        if self.alpha not in (0, 1):
            raise CAJError("alpha must be 0 or 1")
        if self.variant not in ("W", "W*"):
            raise CAJError(f"unknown variant {self.variant!r}")
        if self.mode not in ("base", "qp"):
            raise CAJError(f"unknown mode {self.mode!r}")
        if self.mode == "qp" and self.curve is None:
            raise CAJError("qp mode needs curve data")
        if self.order < 0:
            raise CAJError("hbar order must be non-negative")

    @property
    def degree_cap(self) -> int:
        return (2 * self.alpha + 1) * self.order

    @property
    def required_series_order(self) -> int:
        return self.degree_cap + 3


def _odd(upto: int) -> Iterable[int]:
    return range(1, upto + 1, 2)


def generators_for(spec: CAJSpec) -> Generators:
    if spec.mode == "base":
        return Generators()
    curve = spec.curve
    if curve.order < spec.required_series_order:
        raise CAJError(
            f"curve truncation {curve.order} below the {spec.required_series_order} needed for order {spec.order}"
        )
    return Generators(curve.table(spec.alpha), curve.central_constant(spec.alpha))


def build_caj(spec: CAJSpec) -> OperatorExpr:
    gens = generators_for(spec)
    if spec.variant == "W":
        return _build_w(spec.alpha, gens, spec.degree_cap)
    return _build_w_star(spec.alpha, gens, spec.degree_cap)


def _build_w(alpha: int, gens: Generators, D: int) -> OperatorExpr:
    d0 = D - 2 * alpha - 1
    weight = Fraction(1, 2 * alpha + 1)
    terms = []
    k = 0
    while D - 1 - 2 * k >= 0:
        n = 2 * k - 2 * alpha
        shift = Fraction(1, 8) if k == alpha else 0
        inner = gens.L(n, d0, shift)
        outer = gens.J(-2 * k - 1, D - 1 - 2 * k)
        terms.append((weight, (outer, inner)))
        k += 1
    return OperatorExpr(terms)


def _build_w_star(alpha: int, gens: Generators, D: int) -> OperatorExpr:
    d0 = D - 2 * alpha - 1
    shift = 2 * alpha + 1
    weight = Fraction(1, 2 * alpha + 1)
    terms = []
    for k in _odd(D):
        for m in _odd(D - k):
            if alpha == 1 and k == 1 and m == 1:
                continue  # carried by the separate J_{-1}^3/3! term
            top = k + m - shift
            first = gens.J(top, d0)
            middle = gens.J(-m, d0 - top)
            last = gens.J(-k, D - k)
            terms.append((weight, (last, middle, first)))
    for k in _odd(d0):
        for m in _odd(d0 - k):
            terms.append(
                (weight / 2, (gens.J(-k - m - shift, d0 - m - k), gens.J(k, d0 - m), gens.J(m, d0)))
            )
    if alpha == 0:
        terms.append((Fraction(1, 8), (gens.J(-1, d0),)))
    else:
        cube = (gens.J(-1, d0 + 2), gens.J(-1, d0 + 1), gens.J(-1, d0))
        terms.append((Fraction(1, 6), cube))
        terms.append((Fraction(1, 24), (gens.J(-3, d0),)))
    return OperatorExpr(terms)


# ---------------------------------------------------------------------------
# recursions


def run_recursion(W: OperatorExpr, K: int, D: int, alpha: Optional[int] = None, kdv_parity: bool = False) -> GradedSeries:
    """tau^(0) = 1, tau^(k) = W tau^(k-1) / k, degrees capped at D.

    With ``alpha`` given, level k is also capped at its bound (2 alpha + 1) k.
    """
    if K < 0:
        raise CAJError("K must be non-negative")
    levels = {0: TPolynomial.constant(1)}
    for k in range(1, K + 1):
        cap = D if alpha is None else min(D, (2 * alpha + 1) * k)
        levels[k] = apply(W, levels[k - 1], cap).scale(Fraction(1, k))
    return GradedSeries(levels, K, kdv_parity=kdv_parity, degree_rule=alpha)


def run_general(V: Mapping[int, OperatorExpr], K: int, D: int) -> GradedSeries:
    """Z_k = (1/k) sum_{j<k} (k-j) V_{k-j} Z_j."""
    if K < 0:
        raise CAJError("K must be non-negative")
    levels = {0: TPolynomial.constant(1)}
    for k in range(1, K + 1):
        acc = TPolynomial()
        for j in range(k):
            op = V.get(k - j)
            if op is None or not levels[j]:
                continue
            acc = acc + apply(op, levels[j], D).scale(k - j)
        levels[k] = acc.scale(Fraction(1, k))
    return GradedSeries(levels, K)


def expand(alpha: int, K: int, mode: str = "base", curve: Optional[CurveData] = None, variant: str = "W") -> GradedSeries:
    """tau^(alpha) through hbar^K (base tau-function or its (q, p) deformation)."""
    spec = CAJSpec(alpha, variant, mode, curve, K)
    W = build_caj(spec)
    return run_recursion(W, K, spec.degree_cap, alpha=alpha, kdv_parity=(mode == "base"))


# ---------------------------------------------------------------------------
# fixed number of marked points


def fixed_n_split(series: GradedSeries) -> Dict[Tuple[int, int], TPolynomial]:
    """Split every level by the number of t-factors of its monomials."""
    out: Dict[Tuple[int, int], Dict[Mono, Scalar]] = {}
    for k in range(series.top + 1):
        for m, c in series[k]:
            out.setdefault((k, mono_count(m)), {})[m] = c
    return {key: TPolynomial(terms) for key, terms in out.items()}


def fixed_n_pieces(alpha: int, D: int) -> Dict[int, OperatorExpr]:
    """Base W* split by the change j in the number of t-factors (j in {3, 1, -1})."""
    from .operators import DerT, MulT

    pieces: Dict[int, List] = {3: [], 1: [], -1: []}
    shift = 2 * alpha + 1
    weight = Fraction(1, 2 * alpha + 1)
    for k in _odd(D):
        for m in _odd(D):
            top = k + m - shift
            if top >= 1 and top <= D:
                pieces[1].append((weight * k * m, (MulT(k), MulT(m), DerT(top))))
            low = k + m + shift
            if low <= D:
                pieces[-1].append((weight * low / 2, (MulT(low), DerT(k), DerT(m))))
    if alpha == 0:
        pieces[1].append((Fraction(1, 8), (MulT(1),)))
    else:
        pieces[3].append((Fraction(1, 6), (MulT(1), MulT(1), MulT(1))))
        pieces[1].append((Fraction(1, 8), (MulT(3),)))
    return {j: OperatorExpr(terms) for j, terms in pieces.items()}


def fixed_n_residual(tau: GradedSeries, alpha: int) -> List[Tuple[int, int]]:
    """(k, n) cells where tau violates the fixed-n recursion (empty when it holds)."""
    D = (2 * alpha + 1) * tau.top
    pieces = fixed_n_pieces(alpha, D)
    split = fixed_n_split(tau)
    bad = []
    for k in range(1, tau.top + 1):
        for n in range(0, (2 * alpha + 1) * k + 1):
            rhs = TPolynomial()
            for j, op in pieces.items():
                src = split.get((k - 1, n - j))
                if src:
                    rhs = rhs + apply(op, src, D)
            rhs = TPolynomial({m: c for m, c in rhs if mono_count(m) == n}).scale(Fraction(1, k))
            if rhs != split.get((k, n), TPolynomial()):
                bad.append((k, n))
    return bad
