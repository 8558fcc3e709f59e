"""Command-line entry point.

Every command prints one JSON document (sorted keys, canonical scalar text)
to stdout or to ``--out``.  Exit status: 0 success, 1 a verification found a
nonzero difference, 2 bad usage.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .caj import CAJError, expand
from .cache import Cache
from .constraints import ConstraintError, ConstraintSet, Report, verify_all_constraints, verify_commutators, verify_dimension
from .curve import CurveData, CurveError
from .golden import available_levels, base_log, hodge_log
from .kdv import KdVError, kappa_parameters, kdv_point_tau, shifted_tau
from .scalars import ScalarError, random_points, specialize, to_text
from .series import TruncationError
from .spectral import (
    CURVE_NAMES,
    Recursion,
    SpectralCurve,
    SpectralError,
    compare_curves,
    compare_routes,
    curve_alpha,
    kdv_symplectic_map,
    reference_route,
    stable_pairs,
)
from .tpoly import GradedSeries, graded_log

log = logging.getLogger("hodgecaj")

SERIES_NAMES = ("x", "f", "h", "y0", "y1", "Y", "htilde", "ftilde", "f1", "fb1")
# levels of the reference table that are compared as exact functions of (p, s);
# deeper levels are compared at random rational points
SYMBOLIC_LEVELS = {0: 5, 1: 3}


class UsageError(Exception):
    """Flags that parse but do not describe a valid run."""


@dataclass
class RunConfig:
    command: str
    alpha: int
    point: Optional[Tuple[Fraction, Fraction]]  # None means symbolic or base, see ``symbolic``
    symbolic: bool
    u: Optional[Fraction]
    order: int
    series_order: Optional[int]
    out: Optional[str]
    cache_dir: Optional[str]
    verbose: bool


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hodgecaj", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, order_default=2):
        p.add_argument("--alpha", type=int, choices=(0, 1), default=0)
        p.add_argument("--p", type=_rational)
        p.add_argument("--s", type=_rational)
        p.add_argument("--u", type=_rational)
        p.add_argument("--symbolic", action="store_true")
        p.add_argument("--order", type=_nonnegative, default=order_default)
        p.add_argument("--series-order", type=_nonnegative)
        p.add_argument("--out")
        p.add_argument("--cache", default=os.environ.get("HODGE_CACHE_DIR"))
        p.add_argument("-v", "--verbose", action="store_true")
        return p

    p = common(sub.add_parser("expand", help="tau and log tau through hbar^order"))
    p.add_argument("--mode", choices=("base", "qp"), default="base")
    p.add_argument("--variant", choices=("W", "W*"), default="W")

    p = common(sub.add_parser("verify-appendix", help="compare log tau with the reference table"), order_default=3)
    p.add_argument("--points", type=_nonnegative, default=3)
    p.add_argument("--seed", type=int, default=1)

    p = common(sub.add_parser("verify-constraints", help="Heisenberg-Virasoro constraints and commutators"))
    p.add_argument("--kmax", type=_nonnegative, default=3)
    p.add_argument("--max-degree", type=_nonnegative, default=6)

    common(sub.add_parser("kdv-check", help="shifted base tau against the KdV-point tau"))

    for name in ("spectral", "spectral-compare"):
        p = common(sub.add_parser(name, help="topological recursion correlators" if name == "spectral" else "cross-route checks"))
        p.add_argument("--curve", choices=CURVE_NAMES, default="airy")
        p.add_argument("--gmax", type=_nonnegative, default=1)
        p.add_argument("--nmax", type=_nonnegative, default=2)

    p = common(sub.add_parser("dump-series", help="print a named curve series"), order_default=8)
    p.add_argument("--name", choices=SERIES_NAMES, required=True)
    return parser


def _config(args) -> RunConfig:
    has_ps = args.p is not None or args.s is not None
    chosen = sum([bool(has_ps), args.u is not None, args.symbolic])
    if chosen > 1:
        raise UsageError("choose one of --p/--s, --u and --symbolic")
    point = None
    if has_ps:
        if args.p is None or args.s is None:
            raise UsageError("--p and --s must be given together")
        if args.s == 0:
            raise UsageError("rational mode needs s != 0 (p + q = s^2 must not vanish)")
        point = (args.p, args.s)
    elif args.u:
        point = (2 * args.u * args.u, args.u)  # u = 0 is the undeformed case and leaves point unset
    return RunConfig(
        args.command, args.alpha, point, args.symbolic, args.u, args.order,
        args.series_order, args.out, args.cache, args.verbose,
    )


def _curve_data(cfg: RunConfig, order: int) -> Optional[CurveData]:
    if cfg.symbolic:
        return CurveData.symbolic(order)
    if cfg.point is not None:
        return CurveData.at(*cfg.point, order)
    return None


def _params(cfg: RunConfig, **extra) -> dict:
    point = None if cfg.point is None else [str(cfg.point[0]), str(cfg.point[1])]
    return {"alpha": cfg.alpha, "point": point, "symbolic": cfg.symbolic, "order": cfg.order, **extra}


def _point_json(cfg: RunConfig) -> dict:
    if cfg.symbolic:
        return {"kind": "symbolic"}
    if cfg.point is None:
        return {"kind": "base"}
    return {"kind": "u" if cfg.u is not None else "rational", "p": str(cfg.point[0]), "s": str(cfg.point[1])}


# ---------------------------------------------------------------------------
# commands


def cmd_expand(cfg: RunConfig, args, cache: Cache) -> Tuple[dict, int]:
    if args.mode == "qp" and not cfg.symbolic and cfg.point is None:
        raise UsageError("qp mode needs --symbolic, --p/--s or a nonzero --u")
    if args.mode == "base" and (cfg.symbolic or cfg.point is not None):
        raise UsageError("base mode takes no parameters; use --mode qp")

    def compute():
        curve = None
        if args.mode == "qp":
            curve = _curve_data(cfg, cfg.series_order or (2 * cfg.alpha + 1) * cfg.order + 3)
        tau = expand(cfg.alpha, cfg.order, args.mode, curve, args.variant)
        return {"tau": tau.to_json_obj(), "log": graded_log(tau).to_json_obj()}

    body = cache.get_or_compute("expand", _params(cfg, mode=args.mode, variant=args.variant, series_order=cfg.series_order), compute)
    return {"command": "expand", "alpha": cfg.alpha, "mode": args.mode, "variant": args.variant,
            "parameters": _point_json(cfg), "order": cfg.order, **body}, 0


def _log_table(cfg: RunConfig, cache: Cache, curve: Optional[CurveData], label: str) -> GradedSeries:
    """log tau in qp mode at ``curve`` (or base mode when curve is None), cached."""
    mode = "base" if curve is None else "qp"

    def compute():
        return graded_log(expand(cfg.alpha, cfg.order, mode, curve)).to_json_obj()

    params = {"alpha": cfg.alpha, "order": cfg.order, "mode": mode, "at": label}
    return GradedSeries.from_json_obj(cache.get_or_compute("log", params, compute), cfg.order)


def cmd_verify_appendix(cfg: RunConfig, args, cache: Cache) -> Tuple[dict, int]:
    alpha, K = cfg.alpha, cfg.order
    table = available_levels(alpha)
    if K < 1 or K > table[-1]:
        raise UsageError(f"the reference table for alpha={alpha} covers levels 1..{table[-1]}")
    D = (2 * alpha + 1) * K + 3
    reports: List[Report] = []

    base_report = Report("base log")
    base = _log_table(cfg, cache, None, "base")
    for k in available_levels(alpha, "base"):
        if k <= K:
            base_report.record(f"level {k}", base[k] - base_log(alpha, k))
    reports.append(base_report)

    if cfg.point is not None:
        points = [cfg.point]
        symbolic_top = 0
    else:
        points = random_points(args.points, args.seed) if K > SYMBOLIC_LEVELS[alpha] else []
        symbolic_top = min(K, SYMBOLIC_LEVELS[alpha])
    if symbolic_top:
        sub = RunConfig(**{**cfg.__dict__, "order": symbolic_top})
        logs = _log_table(sub, cache, CurveData.symbolic((2 * alpha + 1) * symbolic_top + 3), "symbolic")
        rep = Report("hodge log (symbolic)")
        for k in range(1, symbolic_top + 1):
            rep.record(f"level {k}", logs[k] - hodge_log(alpha, k))
        reports.append(rep)
    for p0, s0 in points:
        logs = _log_table(cfg, cache, CurveData.at(p0, s0, D), f"{p0},{s0}")
        rep = Report(f"hodge log at p={p0} s={s0}")
        for k in range(symbolic_top + 1, K + 1):
            expected = hodge_log(alpha, k).map_coeffs(lambda c: specialize(c, p0, s0))
            rep.record(f"level {k}", logs[k] - expected)
        reports.append(rep)
    ok = all(r.ok for r in reports)
    return {"command": "verify-appendix", "alpha": alpha, "order": K, "ok": ok,
            "reports": [r.to_json_obj() for r in reports]}, 0 if ok else 1


def cmd_verify_constraints(cfg: RunConfig, args, cache: Cache) -> Tuple[dict, int]:
    levels = cfg.order
    K = levels + 1
    order = cfg.series_order or (2 * cfg.alpha + 1) * K + 6
    curve = _curve_data(cfg, order) or CurveData.base(order)
    mode = "base" if curve.line == "base" else "qp"
    tau = expand(cfg.alpha, K, mode, None if mode == "base" else curve)
    cs = ConstraintSet(cfg.alpha, curve)
    reports = [
        verify_all_constraints(cs, tau, args.kmax, levels),
        verify_commutators(cs, args.kmax, max_degree=args.max_degree),
        verify_dimension(tau, cfg.alpha) if cfg.symbolic else None,
    ]
    reports = [r for r in reports if r is not None]
    ok = all(r.ok for r in reports)
    return {"command": "verify-constraints", "alpha": cfg.alpha, "parameters": _point_json(cfg),
            "levels": levels, "kmax": args.kmax, "ok": ok,
            "reports": [r.to_json_obj() for r in reports]}, 0 if ok else 1


def cmd_kdv_check(cfg: RunConfig, args, cache: Cache) -> Tuple[dict, int]:
    if cfg.symbolic or (cfg.point is not None and cfg.u is None):
        raise UsageError("kdv-check takes --u only")
    u = cfg.u if cfg.u is not None else Fraction(0)
    M = cfg.order
    shifted = graded_log(shifted_tau(cfg.alpha, u, M))
    caj = graded_log(expand(cfg.alpha, M) if u == 0 else kdv_point_tau(cfg.alpha, u, M))
    report = Report(f"kdv alpha={cfg.alpha} u={u}")
    diff = []
    for m in range(M + 1):
        residue = shifted[m] - caj[m]
        report.record(f"level {m}", residue)
        diff.extend({"hbar": m, **e} for e in residue.to_json_obj())
    kappa = [to_text(x) for x in kappa_parameters(cfg.alpha, u, max(M, 1))]
    return {"command": "kdv-check", "alpha": cfg.alpha, "u": str(u), "order": M, "ok": report.ok,
            "shifted_log": shifted.to_json_obj(), "caj_log": caj.to_json_obj(), "diff": diff,
            "kappa_parameters": kappa, "report": report.to_json_obj()}, 0 if report.ok else 1


def _spectral_inputs(cfg: RunConfig, args):
    if cfg.symbolic:
        raise UsageError("spectral commands need a rational point")
    name = args.curve
    if name in ("airy", "bessel") and cfg.point is not None:
        raise UsageError(f"{name} takes no parameters")
    if name in ("s0", "s1") and cfg.point is not None and cfg.u is None:
        raise UsageError(f"{name} is parametrised by --u only")
    pairs = stable_pairs(args.gmax, args.nmax)
    if not pairs:
        raise UsageError("no stable (g, n) with the given --gmax/--nmax")
    top = max(2 * g - 2 + n for g, n in pairs)
    order = cfg.series_order or max(24, 6 * top + 6)
    u = cfg.u or 0
    p, s = (None, None) if cfg.point is None or cfg.u is not None else cfg.point
    if name.startswith("xy") and cfg.point is None and cfg.u is None:
        raise UsageError(f"{name} needs --u or --p/--s")
    return name, pairs, top, order, u, p, s


def cmd_spectral(cfg: RunConfig, args, cache: Cache) -> Tuple[dict, int]:
    name, pairs, _, order, u, p, s = _spectral_inputs(cfg, args)
    curve = SpectralCurve.named(name, u, order, p, s)
    rec = Recursion(curve)
    table = [rec.omega(g, n).to_json_obj() for g, n in pairs]
    return {"command": "spectral", "curve": name, "parameters": _point_json(cfg), "series_order": order,
            "omega": table}, 0


def cmd_spectral_compare(cfg: RunConfig, args, cache: Cache) -> Tuple[dict, int]:
    name, pairs, top, order, u, p, s = _spectral_inputs(cfg, args)
    curve = SpectralCurve.named(name, u, order, p, s)
    log_tau, inverse, phi = reference_route(name, top, u, p, s)
    reports = [compare_routes(curve, log_tau, inverse, phi, pairs)]
    if name in ("s0", "s1") and u:
        alpha = curve_alpha(name)
        mapped = curve.symplectic(kdv_symplectic_map(u, order))
        hodge = SpectralCurve.named(f"xy{alpha}", u, order)
        reports.append(compare_curves(mapped, hodge, pairs))
    eps = Fraction(-2)
    reports.append(compare_curves(curve, curve.rescaled(eps), pairs, factor=lambda g, n: eps ** (2 - 2 * g - n)))
    ok = all(r.ok for r in reports)
    return {"command": "spectral-compare", "curve": name, "parameters": _point_json(cfg), "ok": ok,
            "reports": [r.to_json_obj() for r in reports]}, 0 if ok else 1


def cmd_dump_series(cfg: RunConfig, args, cache: Cache) -> Tuple[dict, int]:
    order = cfg.series_order or cfg.order
    curve = _curve_data(cfg, max(order, 4)) or CurveData.base(max(order, 4))
    series = getattr(curve, args.name)
    return {"command": "dump-series", "name": args.name, "parameters": _point_json(cfg), "series": series.dump()}, 0


COMMANDS = {
    "expand": cmd_expand,
    "verify-appendix": cmd_verify_appendix,
    "verify-constraints": cmd_verify_constraints,
    "kdv-check": cmd_kdv_check,
    "spectral": cmd_spectral,
    "spectral-compare": cmd_spectral_compare,
    "dump-series": cmd_dump_series,
}


def dispatch(cfg: RunConfig, args) -> int:
    cache = Cache(cfg.cache_dir)
    document, status = COMMANDS[cfg.command](cfg, args, cache)
    text = json.dumps(document, sort_keys=True, indent=1) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = _config(args)
        return dispatch(cfg, args)
    except UsageError as exc:
        parser.error(str(exc))
    except (CAJError, ConstraintError, CurveError, KdVError, SpectralError, ScalarError, TruncationError) as exc:
        print(f"hodgecaj: error: {exc}", file=sys.stderr)
        return 2
