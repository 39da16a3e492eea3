"""Checks built on top of the catalog: identity residuals, periodicity,
Taylor expansions, lemma jets, reconstruction of t(x), and recognition of
constants over a small symbolic basis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath import mpf

from .catalog import Catalog, IdentityRecord, LemmaRecord, default_catalog
from .errors import NoMatch, PoleError, RankDeficient, RationalizationFailed
from .exact import horner
from .jet import DEFAULT_ORDER, Jet, trig_t_jet
from .mpreal import (
    CONSTANT_TAGS,
    TrigRationalModel,
    const_pi,
    mpf_to_fraction,
    tag_value,
    to_mpf,
    trig_t_eval,
    working_precision,
)
from .summation import limit_extrapolate

DEFAULT_XS = (Fraction(-1, 4), Fraction(-1, 10), Fraction(1, 10), Fraction(1, 4),
              Fraction(2, 5), Fraction(49, 100))
PERIODICITY_XS = (Fraction(1, 10), Fraction(1, 4))
RESIDUAL_TOL = mpf("1e-30")
PERIODICITY_TOL = mpf("1e-28")
AGREEMENT_TOL = mpf("1e-28")
EXPANSION_TOL = mpf("1e-25")
RATIONAL_BOUND = 10 ** 6
RECOGNIZE_BOUND = 10 ** 4


def _cat(catalog):
    return catalog if catalog is not None else default_catalog()


def _eps(prec):
    return mpf(2) ** (-(prec + 8))


def _as_x(x):
    return Fraction(x) if isinstance(x, (Fraction, int, str)) else x


# -- s(x) = lhs - companion ---------------------------------------------------

@dataclass
class Parts:
    lhs: object
    companion: object
    t: object
    methods: tuple
    agreement: object


def evaluate_parts(rec: IdentityRecord, x, prec: int, method: str | None = None) -> Parts:
    """lhs(x), companion(x) and t(x) at a scalar point (raises PoleError)."""
    x = _as_x(x)
    eps = _eps(prec)
    lhs = rec.lhs.evaluate(x, prec, eps)
    methods = [lhs.method]
    agreement = lhs.agreement or mpf(0)
    comp_val = mpf(0)
    if rec.companion is not None:
        comp = rec.companion.evaluate(x, prec, eps, method=method)
        comp_val = comp.value
        methods.append(comp.method)
        if comp.agreement is not None:
            agreement = max(agreement, comp.agreement)
    t = trig_t_eval(rec.t_model, x, prec)
    return Parts(lhs.value, comp_val, t, tuple(methods), agreement)


def s_value(rec: IdentityRecord, x, prec: int, method=None):
    parts = evaluate_parts(rec, x, prec, method)
    with mpmath.workprec(working_precision(prec)):
        return parts.lhs - parts.companion


def _residual(rec, x, prec, method=None):
    parts = evaluate_parts(rec, x, prec, method)
    with mpmath.workprec(working_precision(prec)):
        return parts.lhs - parts.companion - parts.t, parts


@dataclass
class PointResidual:
    x: Fraction
    residual: object
    lhs: object = None
    companion: object = None
    t: object = None
    methods: tuple = ()
    agreement: object = None
    via_limit: bool = False
    limit_estimate: object = None


def residual_point(rec: IdentityRecord, x, prec: int, method=None) -> PointResidual:
    """|s(x) - t(x)|; removable singularities are handled by one-sided
    extrapolation from nearby rational points."""
    x = _as_x(x)
    try:
        r, parts = _residual(rec, x, prec, method)
        return PointResidual(x, abs(r), parts.lhs, parts.companion, parts.t, parts.methods,
                             parts.agreement)
    except PoleError:
        seen = {}

        def f(xj):
            r, parts = _residual(rec, xj, prec, method)
            seen.setdefault("methods", parts.methods)
            seen["agreement"] = max(seen.get("agreement", mpf(0)), parts.agreement)
            return r

        val, est = limit_extrapolate(f, x, prec)
        return PointResidual(x, abs(val), None, None, None, seen.get("methods", ()),
                             seen.get("agreement"), True, est)


@dataclass
class ResidualReport:
    id: str
    xs: list
    residuals: list
    max_residual: object
    methods: list
    tolerance: object
    passed: bool
    precision: int
    max_agreement: object = None
    points: list = field(default_factory=list)


def _assemble_residuals(rec_id, points, tol, prec) -> ResidualReport:
    points = sorted(points, key=lambda p: p.x)
    residuals = [p.residual for p in points]
    mx = max(residuals) if residuals else mpf(0)
    agree = max((p.agreement for p in points if p.agreement is not None), default=mpf(0))
    methods = sorted({m for p in points for m in p.methods})
    return ResidualReport(rec_id, [p.x for p in points], residuals, mx, methods, tol,
                          bool(mx <= tol), prec, agree, points)


def verify_identity(rec_id: str, xs: Sequence = DEFAULT_XS, precision: int = 256,
                    tolerance=RESIDUAL_TOL, catalog: Catalog | None = None,
                    method: str | None = None) -> ResidualReport:
    rec = _cat(catalog).identity(rec_id)
    tol = mpf(tolerance)
    if rec.kind == "ramanujan":
        xs = [Fraction(0)]
    points = [residual_point(rec, x, precision, method) for x in xs]
    return _assemble_residuals(rec.id, points, tol, precision)


# -- periodicity -------------------------------------------------------------

@dataclass
class PeriodicityReport:
    id: str
    parity: str | None
    xs: list
    differences: list
    max_difference: object
    tolerance: object
    passed: bool | None
    applicable: bool
    via_limit: list = field(default_factory=list)


def periodicity_point(rec: IdentityRecord, x, prec: int):
    sign = rec.parity_sign
    x = _as_x(x)

    def d(xj):
        a = s_value(rec, xj + 1, prec)
        b = s_value(rec, xj, prec)
        with mpmath.workprec(working_precision(prec)):
            return a - sign * b

    try:
        return abs(d(x)), False
    except PoleError:
        val, _ = limit_extrapolate(d, x, prec)
        return abs(val), True


def verify_periodicity(rec_id: str, xs: Sequence = PERIODICITY_XS, precision: int = 256,
                       tolerance=PERIODICITY_TOL, catalog: Catalog | None = None) -> PeriodicityReport:
    rec = _cat(catalog).identity(rec_id)
    tol = mpf(tolerance)
    if rec.parity_sign is None or rec.companion is None:
        return PeriodicityReport(rec.id, rec.parity, list(xs), [], None, tol, None, False)
    diffs, limits = [], []
    for x in sorted(_as_x(x) for x in xs):
        v, lim = periodicity_point(rec, x, precision)
        diffs.append(v)
        limits.append(lim)
    mx = max(diffs)
    return PeriodicityReport(rec.id, rec.parity, sorted(_as_x(x) for x in xs), diffs, mx, tol,
                             bool(mx <= tol), True, limits)


# -- constants ---------------------------------------------------------------

@dataclass(frozen=True)
class Recognized:
    coeff: Fraction
    tag: str

    def __str__(self):
        if self.tag == "1" or self.coeff == 0:
            return str(self.coeff)
        if abs(self.coeff) == 1:
            return ("-" if self.coeff < 0 else "") + self.tag
        return f"{self.coeff}*{self.tag}"


def closed_form_value(terms, prec: int):
    """Sum of coeff * tag over (coeff, tag) pairs."""
    with mpmath.workprec(working_precision(prec)):
        return mpmath.fsum(to_mpf(Fraction(c)) * tag_value(t, prec) for c, t in terms)


def recognize_constant(value, basis: Sequence[str] = CONSTANT_TAGS, precision: int = 256,
                       max_denominator: int = RECOGNIZE_BOUND) -> Recognized:
    """Find the unique basis constant b with value = (p/q) b, q <= max_denominator."""
    wp = working_precision(precision)
    with mpmath.workprec(wp):
        value = mpf(value)
        tol = mpf(2) ** (16 - precision)
        if abs(value) <= tol:
            return Recognized(Fraction(0), "1")
        found = []
        for tag in basis:
            b = tag_value(tag, precision)
            q = mpf_to_fraction(value / b).limit_denominator(max_denominator)
            if q == 0:
                continue
            if abs(value - to_mpf(q) * b) <= tol * max(1, abs(value)):
                found.append(Recognized(q, tag))
        if len(found) != 1:
            what = "no" if not found else "ambiguous"
            raise NoMatch(f"{what} match for {mpmath.nstr(value, 20)} over {list(basis)}")
        return found[0]


# -- expansions --------------------------------------------------------------

@dataclass
class ExpansionReport:
    id: str
    order: int
    coefficients: list
    expected: list                 # mpf or None where not asserted
    expected_forms: list           # (coeff, tag) or None
    differences: list
    recognized: list
    escalation_bound: object
    mechanism: dict | None
    tolerance: object
    passed: bool
    precision: int


def _lhs_jet(rec: IdentityRecord, K: int, prec: int) -> Jet:
    with mpmath.workprec(working_precision(prec)):
        x = Jet.variable(Fraction(0), K)
        return rec.lhs.evaluate(x, prec, _eps(prec)).value


def expand_identity(rec_id: str, order: int | None = None, precision: int = 256,
                    tolerance=EXPANSION_TOL, catalog: Catalog | None = None) -> ExpansionReport:
    rec = _cat(catalog).identity(rec_id)
    if not rec.expected_expansion:
        raise ValueError(f"{rec.id} has no expected expansion")
    top = max(e.order for e in rec.expected_expansion)
    order = top if order is None else order
    if not 0 <= order <= DEFAULT_ORDER:
        raise ValueError(f"order must be in 0..{DEFAULT_ORDER}")
    K = max(order, 1)
    tol = mpf(tolerance)
    jet = _lhs_jet(rec, K, precision)
    hi = _lhs_jet(rec, K, precision + 64)
    wp = working_precision(precision)
    with mpmath.workprec(wp):
        coeffs = [+jet[i] for i in range(order + 1)]
        bound = max(abs(jet[i] - hi[i]) for i in range(order + 1))
        by_order = {e.order: e for e in rec.expected_expansion}
        expected, forms, diffs, recognized = [], [], [], []
        ok = True
        for i, c in enumerate(coeffs):
            e = by_order.get(i)
            if e is None:
                expected.append(None)
                forms.append(None)
                diffs.append(None)
            else:
                v = to_mpf(e.coeff) * tag_value(e.tag, precision)
                expected.append(v)
                forms.append((e.coeff, e.tag))
                diffs.append(abs(c - v))
                ok = ok and abs(c - v) <= tol
            try:
                recognized.append(recognize_constant(c, precision=min(precision, 200)))
            except NoMatch:
                recognized.append(None)
        mech = _mechanism(rec, jet, K, precision) if rec.companion is not None else None
        if mech is not None and mech["order"] <= order:
            ok = ok and mech["difference"] <= tol
    return ExpansionReport(rec.id, order, coeffs, expected, forms, diffs, recognized, bound,
                           mech, tol, bool(ok), precision)


def _mechanism(rec: IdentityRecord, jet: Jet, K: int, prec: int) -> dict | None:
    """x^m coefficient from t-jet + prefactor-jet * companion(0)."""
    m = rec.companion_order
    if m == 0 or m > K:
        return None
    t_jet = trig_t_jet(rec.t_model, Fraction(0), K, prec)
    pref = rec.companion.prefactor.evaluate(Jet.variable(Fraction(0), K), prec)
    comp0 = _companion_at_zero(rec, prec)
    with mpmath.workprec(working_precision(prec)):
        predicted = t_jet[m] + pref[m] * comp0
        return {"order": m, "t_coefficient": t_jet[m], "prefactor_coefficient": pref[m],
                "companion_at_zero": comp0, "predicted": predicted,
                "difference": abs(predicted - jet[m])}


def _companion_at_zero(rec: IdentityRecord, prec: int):
    from .summation import sum_series
    return sum_series(rec.companion.series, Fraction(0), prec, _eps(prec)).value


# -- lemmas ------------------------------------------------------------------

@dataclass
class LemmaReport:
    id: str
    kind: str
    center: Fraction
    variable: str
    coefficients: list
    expected: list
    differences: list
    samples: list                 # (x, value, expected, diff)
    tolerance: object
    passed: bool
    precision: int


def verify_lemma(lemma_id: str, precision: int = 256, tolerance=EXPANSION_TOL,
                 value_tolerance=RESIDUAL_TOL, catalog: Catalog | None = None) -> LemmaReport:
    rec: LemmaRecord = _cat(catalog).lemma(lemma_id)
    tol, vtol = mpf(tolerance), mpf(value_tolerance)
    wp = working_precision(precision)
    coeffs, expected, diffs, samples = [], [], [], []
    ok = True
    n_exp = len(rec.expected_jet)
    if n_exp > 1:
        K = n_exp
        with mpmath.workprec(wp):
            x = Jet.variable(rec.center, K)
            raw = rec.series.evaluate(x, precision, _eps(precision)).value
            jet = raw.rescaled(Fraction(1, 2)) if rec.variable == "u" else raw
        for i, terms in enumerate(rec.expected_jet):
            v = closed_form_value(terms, precision)
            with mpmath.workprec(wp):
                coeffs.append(+jet[i])
                expected.append(v)
                diffs.append(abs(jet[i] - v))
            ok = ok and diffs[-1] <= tol
    elif n_exp == 1:
        res = rec.series.evaluate(rec.center, precision, _eps(precision))
        v = closed_form_value(rec.expected_jet[0], precision)
        with mpmath.workprec(wp):
            coeffs.append(+res.value)
            expected.append(v)
            diffs.append(abs(res.value - v))
        ok = ok and diffs[-1] <= vtol
    if rec.t_model is not None:
        for xs in rec.sample_xs:
            val = rec.series.evaluate(xs, precision, _eps(precision)).value
            t = trig_t_eval(rec.t_model, xs, precision)
            with mpmath.workprec(wp):
                d = abs(val - t)
            samples.append((xs, val, t, d))
            ok = ok and d <= vtol
    return LemmaReport(rec.id, rec.kind, rec.center, rec.variable, coeffs, expected, diffs,
                       samples, tol, bool(ok), precision)


# -- reconstruction of t(x) --------------------------------------------------

@dataclass
class GuessResult:
    id: str
    model: TrigRationalModel
    alphas: list
    powers: list
    fit_residual: object
    samples: list
    extrapolated: list


def _parity(poly) -> int | None:
    nz = [i for i, c in enumerate(poly) if Fraction(c) != 0]
    if not nz:
        return None
    par = {i % 2 for i in nz}
    return par.pop() if len(par) == 1 else None


def guess_t(rec_id: str, denominator: Sequence, q_samples: Sequence, degree: int | None = None,
            precision: int = 256, catalog: Catalog | None = None,
            max_denominator: int = RATIONAL_BOUND) -> GuessResult:
    """Fit y(q) = pi^m h(x) D(q), x = arccos(q)/pi, to a polynomial in q and
    rationalise its coefficients."""
    rec = _cat(catalog).identity(rec_id)
    den = tuple(Fraction(c) for c in denominator)
    qs = [Fraction(q) for q in q_samples]
    if len(set(qs)) != len(qs):
        raise RankDeficient("q samples must be distinct")
    if any(not 0 < q <= 1 for q in qs):
        raise ValueError("q samples must lie in (0, 1]")
    degree = len(den) - 1 if degree is None else degree
    dpar = _parity(den)
    if dpar is not None and rec.parity_sign is not None:
        want = dpar if rec.parity_sign == 1 else 1 - dpar
        powers = [j for j in range(degree + 1) if j % 2 == want]
    else:
        powers = list(range(degree + 1))
    if len(qs) < len(powers):
        raise RankDeficient(f"{len(powers)} unknowns need at least as many samples, got {len(qs)}")
    m = rec.t_model.pi_power
    wp = working_precision(precision)

    def y_at(q):
        with mpmath.workprec(wp + 32):
            q = to_mpf(q)
            x = mpmath.acos(q) / const_pi(precision + 32)
            dq = horner([to_mpf(c) for c in den], q)
        s = s_value(rec, x, precision)
        with mpmath.workprec(wp):
            return const_pi(precision) ** m * s * dq

    ys, extrapolated = [], []
    for q in qs:
        try:
            v = y_at(q)
            extrapolated.append(False)
        except PoleError:
            with mpmath.workprec(wp):
                v, _ = limit_extrapolate(y_at, q, precision)
            extrapolated.append(True)
        ys.append(v)
    with mpmath.workprec(wp):
        A = mpmath.matrix([[to_mpf(q) ** j for j in powers] for q in qs])
        b = mpmath.matrix(ys)
        try:
            sol, res = mpmath.qr_solve(A, b)
        except ZeroDivisionError as exc:
            raise RankDeficient("sample matrix is rank deficient") from exc
        alphas = [sol[i] for i in range(len(powers))]
        tol = mpf(2) ** (64 - precision)
        coeffs = [Fraction(0)] * (max(powers) + 1)
        for j, a in zip(powers, alphas):
            r = mpf_to_fraction(a).limit_denominator(max_denominator)
            if abs(a - to_mpf(r)) > tol * max(1, abs(a)):
                raise RationalizationFailed(
                    f"coefficient of c^{j} = {mpmath.nstr(a, 25)} is not a small rational")
            coeffs[j] = r
    model = TrigRationalModel(tuple(coeffs), den, m)
    return GuessResult(rec.id, model, alphas, powers, res, qs, extrapolated)


# -- polynomial strings for the command line --------------------------------

def parse_poly(text: str, var: str = "c") -> tuple:
    """Parse '4c^4-c^2' style input into low-order-first Fractions."""
    s = text.replace(" ", "").replace("**", "^").replace("*", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, Fraction] = {}
    i = 0
    while i < len(s):
        sign = -1 if s[i] == "-" else 1
        i += 1
        j = i
        while j < len(s) and s[j] not in "+-":
            j += 1
        term = s[i:j]
        i = j
        if not term:
            raise ValueError(f"malformed polynomial {text!r}")
        if var in term:
            head, _, tail = term.partition(var)
            c = Fraction(head) if head else Fraction(1)
            e = int(tail[1:]) if tail.startswith("^") else (1 if not tail else None)
            if e is None:
                raise ValueError(f"malformed term {term!r}")
        else:
            c, e = Fraction(term), 0
        coeffs[e] = coeffs.get(e, Fraction(0)) + sign * c
    deg = max(coeffs)
    return tuple(coeffs.get(k, Fraction(0)) for k in range(deg + 1))


def format_poly(coeffs: Sequence, var: str = "c") -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[e])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mag = "" if (a == 1 and e > 0) else str(a)
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        parts.append(f"{sign}{mag}{mono}")
    if not parts:
        return "0"
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out
