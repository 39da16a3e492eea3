"""wzlab command line.

    wzlab sum rama42 --prec 256
    wzlab check-wz iden2 --grid 25
    wzlab verify all --jobs 4 --out report.json
    wzlab expand iden2 --order 3
    wzlab guess-t idenpi2-cubic --denominator "4c^4-c^2"
    wzlab lemma lemma2

Exit codes: 0 pass, 2 usage or unknown id, 3 convergence failure,
4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import mpmath

from . import __version__
from .analysis import (
    DEFAULT_XS,
    EXPANSION_TOL,
    PERIODICITY_TOL,
    PERIODICITY_XS,
    expand_identity,
    format_poly,
    guess_t,
    parse_poly,
    residual_point,
    verify_lemma,
    verify_periodicity,
)
from .catalog import default_path, family_eval, load_catalog
from .errors import (
    InvariantViolation,
    MethodDisagreement,
    NoConvergence,
    SchemaError,
    UnknownRecord,
    WZLabError,
)
from .exact import certificate_check, wz_check_grid
from .mpreal import tag_value, trig_t_eval

EXIT_OK, EXIT_USAGE, EXIT_CONVERGENCE, EXIT_FAIL = 0, 2, 3, 4
REPORT_SCHEMA = "wzlab-report/1"

# guess_t runs included in `verify all`
GUESS_RUNS = {
    "idenpi2-cubic": ("4c^4-c^2", ("1/4", "1/3", "1/2", "2/3", "3/4"), (3, -8, 8)),
    "idenpi2-quartic": ("2c^4-c^2", ("1/4", "1/3", "1/2", "2/3", "3/4"), (5, -12, 8)),
}
DEFAULT_Q = ("1/4", "1/3", "1/2", "2/3", "3/4")
FAMILY_POINTS = {"coskfamily": ("0", "1/3", "1/2"), "kshift48": ("0", "1", "2")}
SUM_TOL = mpmath.mpf("1e-40")


@dataclass(frozen=True)
class RunConfig:
    precision: int = 256
    tolerance: str = "1e-30"
    catalog: str = ""
    fmt: str = "text"
    jobs: int = 1

    def __post_init__(self):
        if self.precision < 64:
            raise ValueError("precision must be at least 64 bits")
        if not mpmath.mpf(self.tolerance) > 0:
            raise ValueError("tolerance must be positive")


class UsageError(Exception):
    pass


# -- formatting --------------------------------------------------------------

def digits_for(prec: int) -> int:
    return max(1, math.floor(prec * math.log10(2)) - 5)


def dec(value, prec: int) -> str:
    return mpmath.nstr(value, digits_for(prec), min_fixed=-6, max_fixed=12)


def err(value) -> str:
    return mpmath.nstr(value, 6, min_fixed=1, max_fixed=0) if value else "0"


def rat(q) -> str:
    return str(Fraction(q))


def _parse_rats(text: str) -> list[Fraction]:
    try:
        return [Fraction(s.strip()) for s in text.split(",") if s.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rational list {text!r}") from exc


def _check(id_, kind, inputs, passed, prec, **extra) -> dict:
    out = {"id": id_, "kind": kind, "inputs": inputs, "precision_bits": prec}
    out.update(extra)
    out["pass"] = passed
    return out


# -- individual checks (top level so they pickle into worker processes) ----

@lru_cache(maxsize=4)
def _catalog(path: str):
    return load_catalog(path)


def check_residual(cfg: RunConfig, id_: str, x) -> dict:
    cat = _catalog(cfg.catalog)
    rec = cat.identity(id_)
    tol = mpmath.mpf(cfg.tolerance)
    pt = residual_point(rec, x, cfg.precision)
    passed = bool(pt.residual <= tol)
    extra = {"methods": list(pt.methods), "via_limit": pt.via_limit,
             "abs_err": err(pt.residual), "tolerance": cfg.tolerance}
    if pt.agreement is not None:
        extra["method_agreement"] = err(pt.agreement)
        passed = passed and bool(pt.agreement <= mpmath.mpf("1e-28"))
    if not pt.via_limit:
        with mpmath.workprec(cfg.precision + 64):
            extra["value"] = dec(pt.lhs - pt.companion, cfg.precision)
        extra["expected"] = dec(pt.t, cfg.precision)
    return _check(rec.id, "residual", {"x": rat(x)}, passed, cfg.precision, **extra)


def check_periodicity(cfg: RunConfig, id_: str) -> dict:
    rep = verify_periodicity(id_, PERIODICITY_XS, cfg.precision, PERIODICITY_TOL,
                             catalog=_catalog(cfg.catalog))
    if not rep.applicable:
        return _check(rep.id, "periodicity", {}, None, cfg.precision, status="not applicable")
    return _check(rep.id, "periodicity", {"xs": [rat(x) for x in rep.xs], "parity": rep.parity},
                  rep.passed, cfg.precision, abs_err=[err(d) for d in rep.differences],
                  tolerance=err(rep.tolerance))


def check_expansion(cfg: RunConfig, id_: str, order=None) -> dict:
    rep = expand_identity(id_, order, cfg.precision, EXPANSION_TOL, catalog=_catalog(cfg.catalog))
    extra = {
        "values": [dec(c, cfg.precision) for c in rep.coefficients],
        "matched": [str(r) if r is not None else None for r in rep.recognized],
        "expected": [None if f is None else _form(f) for f in rep.expected_forms],
        "abs_err": [None if d is None else err(d) for d in rep.differences],
        "escalation_bound": err(rep.escalation_bound),
        "tolerance": err(rep.tolerance),
    }
    if rep.mechanism is not None:
        extra["mechanism"] = {"order": rep.mechanism["order"],
                              "predicted": dec(rep.mechanism["predicted"], cfg.precision),
                              "abs_err": err(rep.mechanism["difference"])}
    return _check(rep.id, "expansion", {"order": rep.order}, rep.passed, cfg.precision, **extra)


def _form(f) -> str:
    c, tag = f
    return str(c) if tag == "1" else f"{c}*{tag}"


def check_lemma(cfg: RunConfig, id_: str) -> dict:
    rep = verify_lemma(id_, cfg.precision, catalog=_catalog(cfg.catalog))
    extra = {
        "values": [dec(c, cfg.precision) for c in rep.coefficients],
        "expected": [dec(c, cfg.precision) for c in rep.expected],
        "abs_err": [err(d) for d in rep.differences],
    }
    if rep.samples:
        extra["samples"] = [{"x": rat(x), "value": dec(v, cfg.precision),
                             "expected": dec(t, cfg.precision), "abs_err": err(d)}
                            for x, v, t, d in rep.samples]
    return _check(rep.id, "lemma", {"center": rat(rep.center), "variable": rep.variable},
                  rep.passed, cfg.precision, **extra)


def check_guess(cfg: RunConfig, id_: str, denominator: str, qs, expect=None) -> dict:
    den = parse_poly(denominator)
    res = guess_t(id_, den, [Fraction(q) for q in qs], precision=cfg.precision,
                  catalog=_catalog(cfg.catalog))
    found = tuple(res.model.numerator[j] for j in res.powers)
    extra = {"numerator": format_poly(res.model.numerator),
             "alphas": [rat(res.model.numerator[j]) for j in res.powers],
             "fit_residual": err(res.fit_residual),
             "extrapolated_q": [rat(q) for q, e in zip(res.samples, res.extrapolated) if e]}
    passed = True
    if expect is not None:
        extra["expected"] = [rat(a) for a in expect]
        passed = tuple(Fraction(a) for a in expect) == found
    return _check(res.id, "guess-t", {"denominator": format_poly(den), "q": [rat(q) for q in qs]},
                  passed, cfg.precision, **extra)


def check_family(cfg: RunConfig, id_: str, k) -> dict:
    cat = _catalog(cfg.catalog)
    fam = cat.family(id_)
    v = family_eval(fam, Fraction(k), cfg.precision, cat)
    t = trig_t_eval(fam.expected, Fraction(k), cfg.precision)
    with mpmath.workprec(cfg.precision + 64):
        d = abs(v - t)
    return _check(fam.id, "family", {"k": rat(k)}, bool(d <= mpmath.mpf(cfg.tolerance)),
                  cfg.precision, value=dec(v, cfg.precision), expected=dec(t, cfg.precision),
                  abs_err=err(d))


def check_sum(cfg: RunConfig, id_: str, closed=None) -> dict:
    cat = _catalog(cfg.catalog)
    res = cat.series(id_).evaluate(Fraction(0), cfg.precision)
    extra = {"value": dec(res.value, cfg.precision), "terms_used": res.terms_used,
             "method": res.method}
    if res.tail_bound is not None:
        extra["tail_bound"] = err(res.tail_bound)
    passed = True
    if closed is not None:
        with mpmath.workprec(cfg.precision + 64):
            t = tag_value(closed[1], cfg.precision) * closed[0]
            d = abs(res.value - t)
        extra.update(expected=f"{closed[0]}*{closed[1]}", abs_err=err(d))
        passed = bool(d <= SUM_TOL) and res.terms_used <= 2000
    return _check(cat.resolve(id_), "sum", {}, passed, cfg.precision, **extra)


def check_wz(cfg: RunConfig, id_: str, grid: int) -> dict:
    rec = _catalog(cfg.catalog).identity(id_)
    if rec.wz_pair is None or not rec.wz_pair.has_g or rec.check_mode == "numeric-only":
        return _check(rec.id, "wz", {"grid": grid}, None, 0, status="skipped",
                      reason="numeric-only record")
    g = wz_check_grid(rec.wz_pair, grid, grid)
    c = certificate_check(rec.wz_pair, grid, grid)
    extra = {"cells": g.cells, "nonzero": len(g.nonzero), "poles": len(g.poles),
             "certificate_inconsistent": len(c.inconsistent)}
    if not g.passed:
        extra["first_failure"] = list(g.first_failure)
    elif not c.passed:
        extra["first_failure"] = list((c.inconsistent or c.poles)[0][:2])
    return _check(rec.id, "wz", {"grid": grid}, g.passed and c.passed, 0, **extra)


RUNNERS = {
    "residual": check_residual, "periodicity": check_periodicity, "expansion": check_expansion,
    "lemma": check_lemma, "guess-t": check_guess, "family": check_family, "sum": check_sum,
    "wz": check_wz,
}


def run_task(cfg: RunConfig, task: tuple) -> dict:
    kind, *args = task
    try:
        return RUNNERS[kind](cfg, *args)
    except (NoConvergence, MethodDisagreement) as exc:
        return {"id": args[0], "kind": kind, "pass": False, "error": type(exc).__name__,
                "message": str(exc), "convergence": True}
    except WZLabError as exc:
        if isinstance(exc, UnknownRecord):
            raise
        return {"id": args[0], "kind": kind, "pass": False, "error": type(exc).__name__,
                "message": str(exc)}


def _run_all(cfg: RunConfig, tasks: list) -> list:
    if cfg.jobs <= 1 or len(tasks) == 1:
        return [run_task(cfg, t) for t in tasks]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(run_task, [cfg] * len(tasks), tasks))


def suite_tasks(cat, xs=DEFAULT_XS, grid: int = 25) -> list:
    tasks = []
    closed = {"rama42": (16, "1/pi"), "pi2-1": (32, "1/pi^2"), "pi2-2": (48, "1/pi^2")}
    for id_ in cat.identity_ids():
        rec = cat.identity(id_)
        if rec.kind == "ramanujan":
            tasks.append(("sum", id_, closed.get(id_)))
            continue
        if rec.wz_pair is not None and rec.wz_pair.has_g and rec.check_mode != "numeric-only":
            tasks.append(("wz", id_, grid))
        tasks.extend(("residual", id_, x) for x in xs)
        tasks.append(("periodicity", id_))
        if rec.expected_expansion:
            tasks.append(("expansion", id_, None))
    tasks.extend(("lemma", id_) for id_ in cat.lemma_ids())
    for id_, (den, qs, expect) in GUESS_RUNS.items():
        tasks.append(("guess-t", id_, den, qs, expect))
    for id_, ks in FAMILY_POINTS.items():
        tasks.extend(("family", id_, k) for k in ks)
    return tasks


# -- output ------------------------------------------------------------------

def build_report(cfg: RunConfig, command: str, checks: list, started: str) -> dict:
    failed = [c for c in checks if c.get("pass") is False]
    return {
        "schema": REPORT_SCHEMA,
        "command": command,
        "config": {"precision_bits": cfg.precision, "tolerance": cfg.tolerance,
                   "catalog": cfg.catalog},
        "checks": checks,
        "summary": {"total": len(checks), "failed": len(failed),
                    "skipped": sum(1 for c in checks if c.get("pass") is None),
                    "pass": not failed},
        "metadata": {"version": __version__, "started": started,
                     "finished": datetime.now(timezone.utc).isoformat(timespec="seconds")},
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _status(c) -> str:
    if c.get("pass") is None:
        return "SKIP"
    return "PASS" if c["pass"] else "FAIL"


def _summary_line(c: dict) -> str:
    inputs = " ".join(f"{k}={v}" for k, v in c.get("inputs", {}).items()
                      if not isinstance(v, list))
    if "error" in c:
        tail = f"{c['error']}: {c['message']}"
    elif c["kind"] == "wz":
        tail = (f"{c['cells']} cells, {c['poles']} poles" if "cells" in c
                else "SKIPPED (numeric-only record)")
        if "first_failure" in c:
            tail += f", first failure at (n,k)=({c['first_failure'][0]},{c['first_failure'][1]})"
    elif c["kind"] == "guess-t":
        tail = f"numerator {c['numerator']}"
    elif c["kind"] == "expansion":
        tail = "[" + ", ".join(m or "?" for m in c["matched"]) + "]"
    else:
        e = c.get("abs_err")
        tail = f"abs_err {max(e, key=lambda s: float(s)) if isinstance(e, list) else e}" if e else \
            c.get("status", "")
    return f"{_status(c):4}  {c['kind']:<11} {c['id']:<16} {inputs:<12} {tail}".rstrip()


def print_text(command: str, checks: list, out=None) -> None:
    out = out or sys.stdout
    for c in checks:
        print(_summary_line(c), file=out)
    if len(checks) > 1:
        failed = sum(1 for c in checks if c.get("pass") is False)
        print(f"{len(checks)} checks, {failed} failed", file=out)


def _print_sum(c: dict, out=None) -> None:
    out = out or sys.stdout
    print(f"{c['id']}: {c['value']}", file=out)
    print(f"  method     {c['method']}", file=out)
    if c["terms_used"] is not None:
        print(f"  terms used {c['terms_used']}", file=out)
    if "tail_bound" in c:
        print(f"  tail bound {c['tail_bound']}", file=out)


def _print_expand(c: dict, out=None) -> None:
    out = out or sys.stdout
    print(f"{c['id']}  order {c['inputs']['order']}", file=out)
    for i, (v, m) in enumerate(zip(c["values"], c["matched"])):
        e = c["abs_err"][i]
        note = f"  (abs_err {e})" if e is not None else ""
        with mpmath.workdps(len(v)):
            shown = mpmath.nstr(mpmath.mpf(v), 30)
        print(f"  x^{i}: {m or '?':<14} {shown:<38}{note}", file=out)
    if "mechanism" in c:
        mech = c["mechanism"]
        print(f"  x^{mech['order']} via companion at 0: abs_err {mech['abs_err']}", file=out)
    print(_status(c), file=out)


# -- argument handling -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=256, help="working precision in bits")
    common.add_argument("--tol", default="1e-30", help="residual tolerance")
    common.add_argument("--catalog", help="catalog JSON (default: $WZLAB_CATALOG or bundled)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = argparse.ArgumentParser(prog="wzlab", description="Verify WZ-derived series identities.")
    p.add_argument("--version", action="version", version=f"wzlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sum", parents=[common], help="sum a catalog series")
    s.add_argument("series_id")
    s.add_argument("--eps", help="absolute error target (default 2^-prec)")
    s.add_argument("--x", default="0")
    s.add_argument("--k", default="0")

    s = sub.add_parser("check-wz", parents=[common], help="exact WZ telescoping check")
    s.add_argument("pair_id")
    s.add_argument("--grid", type=int, default=25)

    s = sub.add_parser("verify", parents=[common], help="identity residuals, or the whole suite")
    s.add_argument("identity_id", help="identity id or 'all'")
    s.add_argument("--xs", help="comma separated rationals")
    s.add_argument("--grid", type=int, default=25)

    s = sub.add_parser("expand", parents=[common], help="Taylor coefficients at x=0")
    s.add_argument("identity_id")
    s.add_argument("--order", type=int)

    s = sub.add_parser("guess-t", parents=[common], help="reconstruct t(x) from samples")
    s.add_argument("identity_id")
    s.add_argument("--denominator", required=True, help='polynomial in c, e.g. "4c^4-c^2"')
    s.add_argument("--q", default=",".join(DEFAULT_Q), help="comma separated q = cos(pi x)")

    s = sub.add_parser("lemma", parents=[common], help="lemma jets and auxiliary sums")
    s.add_argument("lemma_id")
    return p


def _config(args) -> RunConfig:
    catalog = str(Path(args.catalog).resolve()) if args.catalog else str(default_path())
    try:
        return RunConfig(args.prec, args.tol, catalog, args.format, max(1, args.jobs))
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc


def _tasks_for(args, cfg: RunConfig) -> list:
    cat = _catalog(cfg.catalog)
    cmd = args.command
    if cmd == "sum":
        return [("sum", args.series_id, None)]
    if cmd == "check-wz":
        return [("wz", args.pair_id, args.grid)]
    if cmd == "verify":
        xs = _parse_rats(args.xs) if args.xs else list(DEFAULT_XS)
        if args.identity_id == "all":
            return suite_tasks(cat, xs, args.grid)
        rec = cat.identity(args.identity_id)
        if rec.kind == "ramanujan":
            xs = [Fraction(0)]
        tasks = [("residual", rec.id, x) for x in sorted(xs)]
        if rec.parity_sign is not None and rec.companion is not None:
            tasks.append(("periodicity", rec.id))
        return tasks
    if cmd == "expand":
        return [("expansion", args.identity_id, args.order)]
    if cmd == "guess-t":
        return [("guess-t", args.identity_id, args.denominator, tuple(map(str, _parse_rats(args.q))),
                 None)]
    if cmd == "lemma":
        return [("lemma", args.lemma_id)]
    raise UsageError(f"unknown command {cmd}")


def _sum_direct(args, cfg: RunConfig) -> dict:
    """`sum` honours --eps/--x/--k, so it bypasses the shared task runner."""
    cat = _catalog(cfg.catalog)
    series = cat.series(args.series_id)
    eps = mpmath.mpf(args.eps) if args.eps else None
    try:
        x, k = Fraction(args.x), Fraction(args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if cat.kind_of(args.series_id) == "family":
        fam = cat.family(args.series_id)
        value = family_eval(fam, k, cfg.precision, cat)
        return _check(fam.id, "sum", {"k": rat(k)}, True, cfg.precision,
                      value=dec(value, cfg.precision), terms_used=None, method="family")
    res = series.evaluate(x, cfg.precision, eps, k)
    extra = {"value": dec(res.value, cfg.precision), "terms_used": res.terms_used,
             "method": res.method}
    if res.tail_bound is not None:
        extra["tail_bound"] = err(res.tail_bound)
    if res.agreement is not None:
        extra["method_agreement"] = err(res.agreement)
    return _check(cat.resolve(args.series_id), "sum", {"x": rat(x), "k": rat(k)}, True,
                  cfg.precision, **extra)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    try:
        cfg = _config(args)
        if args.command == "sum":
            checks = [_sum_direct(args, cfg)]
        else:
            checks = _run_all(cfg, _tasks_for(args, cfg))
    except (SchemaError, InvariantViolation) as exc:
        print(f"wzlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, UnknownRecord, ValueError) as exc:
        print(f"wzlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoConvergence, MethodDisagreement) as exc:
        print(f"wzlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except WZLabError as exc:
        print(f"wzlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL

    report = build_report(cfg, args.command, checks, started)
    if args.out:
        Path(args.out).write_text(dump_report(report))
    if cfg.fmt == "json":
        sys.stdout.write(dump_report(report))
    elif args.command == "sum":
        _print_sum(checks[0])
    elif args.command == "expand" and "error" not in checks[0]:
        _print_expand(checks[0])
    else:
        print_text(args.command, checks)

    if any(c.get("pass") is False for c in checks):
        if all(c.get("convergence") for c in checks if c.get("pass") is False):
            return EXIT_CONVERGENCE
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
