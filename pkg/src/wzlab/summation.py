"""Evaluation of hypergeometric series at scalar or jet points.

Four strategies, chosen from the shape of the series:

* ``finite``  a numerator Pochhammer offset is a non-positive integer;
* ``direct``  |z| < 1 (or factorial decay), partial sums with a geometric
  tail bound;
* ``cvz``     z = 1 with alternation; accelerated by both CVZ and the Euler
  transform, which must agree;
* ``zeta``    z = 1 without alternation; a direct head plus an asymptotic
  tail summed with Hurwitz zeta values.  This is the analytic continuation in
  the parameters, so it also covers the divergent range.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath
from mpmath import mpf

from . import accel
from .errors import (
    DivisionByZeroConstantTerm,
    MethodDisagreement,
    NoConvergence,
    PochhammerSingularity,
    PoleAtCenter,
    PoleAtX,
    PoleError,
)
from .exact import BiPoly, BiRat, PochFactor, horner, poch_exact, poly_trim
from .jet import Jet, gamma_ratio_jet, pow_jet
from .mpreal import bernoulli_numbers, bernoulli_polys, to_mpf, working_precision

MAX_DIRECT_TERMS = 200_000
RATIO_PATIENCE = 64
DISAGREEMENT_FACTOR = 2 ** 16


@dataclass(frozen=True)
class HyperSeriesSpec:
    """sum_n (+-1)^n z^n prod (a_i)_n^{p_i} * [W(n,p) + H(n,p) H_n] * E(n,p).

    ``p`` is the formal variable x or the family parameter k, per ``param``.
    Pochhammer offsets are ``offset + k_coupling*k + x_coupling*x``.
    """

    base: Fraction
    alternating: bool = False
    factors: tuple[PochFactor, ...] = ()
    weight: BiPoly = field(default_factory=lambda: BiPoly.const(1))
    extra_weight: BiRat | None = None
    harmonic_weight: BiPoly | None = None
    param: str = "x"

    def __post_init__(self):
        if self.param not in ("x", "k"):
            raise ValueError("param must be 'x' or 'k'")
        if max((i for i, _ in self.weight.terms), default=0) > 2:
            raise ValueError("weight degree in n must be <= 2; use extra_weight")

    @property
    def balance(self) -> int:
        return sum(f.power for f in self.factors)


@dataclass
class SumResult:
    value: object
    terms_used: int
    method: str
    tail_bound: object = None
    agreement: object = None
    alternatives: dict = field(default_factory=dict)
    precision: int = 0


# -- points ------------------------------------------------------------------

@dataclass
class _Point:
    x_num: object            # mpf or Jet
    x_exact: Fraction | None
    k: Fraction
    jet_order: int | None
    center: Fraction | None

    @property
    def is_jet(self) -> bool:
        return self.jet_order is not None


def _make_point(x, k) -> _Point:
    k = Fraction(k)
    if isinstance(x, Jet):
        return _Point(x, None, k, x.order, x.center)
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        return _Point(to_mpf(x), x, k, None, None)
    return _Point(mpf(x), None, k, None, None)


def _param_value(spec_param: str, pt: _Point):
    """(numeric, exact-or-None) value of the weight parameter."""
    if spec_param == "k":
        return to_mpf(pt.k), pt.k
    return pt.x_num, pt.x_exact


def _coeffs_in_n(poly: BiPoly, p_num, p_exact) -> list:
    """Coefficients (low order first) in n after substituting p."""
    if p_exact is not None:
        return [to_mpf(c) for c in poly.in_n(p_exact)]
    deg_n = max((i for i, _ in poly.terms), default=0)
    deg_p = max((j for _, j in poly.terms), default=0)
    out = []
    for i in range(deg_n + 1):
        row = [to_mpf(poly.terms.get((i, j), Fraction(0))) for j in range(deg_p + 1)]
        out.append(horner(row, p_num))
    while len(out) > 1 and _is_zero(out[-1]):
        out.pop()
    return out


def _is_zero(v) -> bool:
    if isinstance(v, Jet):
        return all(c == 0 for c in v.coeffs)
    return v == 0


# -- term stream -------------------------------------------------------------

class TermStream:
    """Lazily generated signless terms a_n (the (-1)^n is not applied)."""

    def __init__(self, spec: HyperSeriesSpec, x, k=Fraction(0)):
        self.spec = spec
        self.pt = pt = _make_point(x, k)
        self.z = to_mpf(Fraction(spec.base))
        self._factors = []
        self.limit = None  # terms with index >= limit vanish
        den_poles = []
        for f in spec.factors:
            kpart = f.offset + f.k_coupling * pt.k
            if pt.is_jet:
                exact = kpart + f.x_coupling * pt.center
                item = (f, exact, to_mpf(exact), to_mpf(f.x_coupling))
            elif pt.x_exact is not None:
                exact = kpart + f.x_coupling * pt.x_exact
                item = (f, exact, to_mpf(exact), None)
            else:
                exact = kpart if f.x_coupling == 0 else None
                num = to_mpf(kpart) + to_mpf(f.x_coupling) * pt.x_num
                item = (f, exact, num, None)
            self._factors.append(item)
            if exact is not None and exact <= 0 and exact.denominator == 1:
                m = -int(exact)
                if f.power > 0 and (not pt.is_jet or f.x_coupling == 0):
                    self.limit = m + 1 if self.limit is None else min(self.limit, m + 1)
                elif f.power < 0:
                    den_poles.append(m)
        for m in den_poles:
            if self.limit is None or self.limit > m + 1:
                raise PochhammerSingularity(
                    f"denominator Pochhammer vanishes at n={m + 1} and the series does not terminate")

        p_num, p_exact = _param_value(spec.param, pt)
        self._w = _coeffs_in_n(spec.weight, p_num, p_exact)
        self._h = _coeffs_in_n(spec.harmonic_weight, p_num, p_exact) if spec.harmonic_weight else None
        self._e_exact = None
        if spec.extra_weight is not None:
            if p_exact is not None:
                num, den = spec.extra_weight.at_param(p_exact)
                self._e_exact = den
                self._e = ([to_mpf(c) for c in num] or [mpf(0)], [to_mpf(c) for c in den])
            else:
                self._e = (_coeffs_in_n(spec.extra_weight.num, p_num, None),
                           _coeffs_in_n(spec.extra_weight.den, p_num, None))
        else:
            self._e = None
        self._hyper = self._one()
        self._harm = mpf(0)
        self._n = 0
        self.terms: list = []

    def _one(self):
        if self.pt.is_jet:
            return Jet.constant(1, self.pt.jet_order, self.pt.center)
        return mpf(1)

    # numeric offsets for growth estimates
    def offsets(self) -> list:
        out = []
        for f, exact, num, _ in self._factors:
            out.append((f.power, num))
        return out

    def growth(self) -> float:
        """sigma with a_n ~ n^sigma (balanced series only)."""
        sigma = sum(p * float(num) for p, num in self.offsets())
        sigma += len(self._w) - 1
        if self._h is not None:
            sigma = max(sigma, len(self._h) - 1 + sum(p * float(num) for p, num in self.offsets()))
        if self._e is not None:
            sigma += (len(poly_trim(self._e[0])) - len(poly_trim(self._e[1])))
        return sigma

    def _weight_at(self, n: int):
        w = horner(self._w, n)
        if self._h is not None:
            w = w + horner(self._h, n) * self._harm
        if self._e is not None:
            if self._e_exact is not None and horner(self._e_exact, n) == 0:
                raise PoleAtX(f"weight denominator vanishes at n={n}")
            d = horner(self._e[1], n)
            if _is_zero(d if not isinstance(d, Jet) else d[0]):
                raise PoleAtX(f"weight denominator vanishes at n={n}")
            w = w * horner(self._e[0], n) / d
        return w

    def _advance(self):
        n = self._n
        if self.limit is not None and n + 1 >= self.limit:
            self._hyper = self._hyper * 0
            self._n += 1
            return
        h = self._hyper * self.z
        try:
            for f, exact, num, slope in self._factors:
                if slope is not None:
                    c0 = to_mpf(exact + n)
                    for _ in range(f.exponent):
                        h = h.mul_linear(c0, slope) if f.side == "num" else h.div_linear(c0, slope)
                else:
                    v = num + n
                    for _ in range(f.exponent):
                        h = h * v if f.side == "num" else h / v
        except (DivisionByZeroConstantTerm, ZeroDivisionError) as exc:
            raise PochhammerSingularity(f"denominator Pochhammer vanishes at n={n + 1}") from exc
        self._hyper = h
        self._n += 1
        self._harm += mpf(1) / self._n

    def ensure(self, count: int) -> list:
        while len(self.terms) < count:
            n = len(self.terms)
            while self._n < n:
                self._advance()
            if self.limit is not None and n >= self.limit:
                self.terms.append(self._hyper * 0 if self.pt.is_jet else mpf(0))
            else:
                self.terms.append(self._hyper * self._weight_at(n))
        return self.terms

    def signed(self, n: int):
        self.ensure(n + 1)
        t = self.terms[n]
        return -t if (self.spec.alternating and n % 2) else t


def _zero_like(pt: _Point):
    if pt.is_jet:
        return Jet.constant(0, pt.jet_order, pt.center)
    return mpf(0)


def _default_eps(prec: int):
    return mpf(2) ** (-prec)


# -- strategies --------------------------------------------------------------

def sum_direct(spec: HyperSeriesSpec, x, prec: int, eps=None, k=Fraction(0),
               max_terms: int = MAX_DIRECT_TERMS) -> SumResult:
    """Partial sums until the geometric tail bound |t_N| r/(1-r) <= eps."""
    wp = working_precision(prec)
    with mpmath.workprec(wp):
        eps = _default_eps(prec) if eps is None else mpf(eps)
        stream = TermStream(spec, x, k)
        if stream.limit is not None:
            return _finite(stream, prec)
        zabs = abs(stream.z)
        total = _zero_like(stream.pt)
        prev = None
        climbing = 0
        for n in range(max_terms):
            t = stream.signed(n)
            total = total + t
            size = accel.magnitude(t)
            if prev is not None and prev > 0 and size > 0:
                ratio = size / prev
                climbing = climbing + 1 if ratio >= 1 else 0
                if climbing >= RATIO_PATIENCE:
                    raise NoConvergence(f"term ratio >= 1 for {RATIO_PATIENCE} consecutive terms")
                r = max(ratio, zabs) * (1 + mpf(1) / 256)
                if n >= 8 and r < 1:
                    tail = size * r / (1 - r)
                    if tail <= eps:
                        return SumResult(total, n + 1, "direct", tail, None, {}, prec)
            elif size == 0 and prev == 0 and n >= 8:
                return SumResult(total, n + 1, "direct", mpf(0), None, {}, prec)
            prev = size
            # keep the stored list from growing without bound
            if n > 64:
                stream.terms[n - 64] = None
        raise NoConvergence(f"direct summation did not reach eps in {max_terms} terms")


def _finite(stream: TermStream, prec: int) -> SumResult:
    total = _zero_like(stream.pt)
    for n in range(stream.limit):
        total = total + stream.signed(n)
    return SumResult(total, stream.limit, "finite", mpf(0), None, {}, prec)


def sum_alternating(spec: HyperSeriesSpec, x, prec: int, eps=None, k=Fraction(0)) -> SumResult:
    """Abel value of sum (-1)^n a_n from CVZ, checked against the Euler transform."""
    if not spec.alternating:
        raise ValueError("series is not alternating")
    wp = working_precision(prec)
    with mpmath.workprec(wp):
        eps = _default_eps(prec) if eps is None else mpf(eps)
        bits = max(16, -int(mpmath.floor(mpmath.log(eps, 2)))) + 16
        probe = TermStream(spec, x, k)
        if probe.limit is not None:
            return _finite(probe, prec)
        sigma = max(0.0, probe.growth())
    n_cvz = accel.cvz_terms_needed(bits, sigma)
    n_euler = int(1.2 * bits + 8 * sigma + 60)
    extra = int(sigma * math.log2(max(n_cvz, n_euler)) * 1.5) + 24
    with mpmath.workprec(wp + extra):
        stream = TermStream(spec, _lift(x), k)
        terms = stream.ensure(max(n_cvz, n_euler))
        v_cvz = accel.cvz_alternating(terms[:n_cvz])
        v_eul, used, ok = accel.euler_alternating(terms, eps / 16)
        while not ok and len(terms) < 8 * n_euler:
            terms = stream.ensure(2 * len(terms))
            v_eul, used, ok = accel.euler_alternating(terms, eps / 16)
    with mpmath.workprec(wp):
        v_cvz, v_eul = +v_cvz, +v_eul
        diff = accel.magnitude(v_cvz - v_eul)
        if not ok or diff > DISAGREEMENT_FACTOR * eps:
            raise MethodDisagreement(
                f"cvz and euler disagree by {mpmath.nstr(diff, 5)}", {"cvz": v_cvz, "euler": v_eul})
        return SumResult(v_cvz, n_cvz, "cvz", None, diff, {"euler": v_eul}, prec)


def _lift(x):
    """Re-round a point into the current (higher) context."""
    if isinstance(x, Jet):
        return Jet(list(x.coeffs), x.center)
    if isinstance(x, (Fraction, int)):
        return x
    return mpf(x)


# -- zeta-regularised tails --------------------------------------------------

def hurwitz_tail(svals: Sequence, N: int, eps) -> list:
    """zeta(s, N) for each s by Euler-Maclaurin at the integer N (s != 1)."""
    Nf = mpf(N)
    logN = mpmath.log(Nf)
    bern = bernoulli_numbers(240)
    out = []
    for s in svals:
        if s == 1:
            raise PoleAtX("Hurwitz zeta pole at s = 1")
        ns = mpmath.exp(-s * logN)
        acc = Nf * ns / (s - 1) + ns / 2
        rising = s                  # s (s+1) ... (s+2k-2)
        npow = ns / Nf              # N^(-s-2k+1)
        prev = None
        for kk in range(1, 120):
            term = to_mpf(bern[2 * kk]) / math.factorial(2 * kk) * rising * npow
            acc += term
            size = abs(term)
            if size <= eps * max(abs(acc), 1) or rising == 0:
                break
            if prev is not None and size > prev:
                break
            prev = size
            rising *= (s + 2 * kk - 1) * (s + 2 * kk)
            npow /= Nf * Nf
        out.append(acc)
    return out


def _w_series(coeffs: list, order: int):
    """(lead, jet of P(n)/(lead n^d) in w = 1/n) for a polynomial in n."""
    c = poly_trim(coeffs)
    if not c:
        raise PoleAtX("weight polynomial vanishes identically")
    d = len(c) - 1
    lead = c[-1]
    series = [c[d - i] / lead if d - i >= 0 else mpf(0) for i in range(order + 1)]
    return lead, d, Jet(series)


def sum_zeta_tail(spec: HyperSeriesSpec, x, prec: int, eps=None, k=Fraction(0),
                  head: int | None = None) -> SumResult:
    """Balanced z = 1 series: head sum plus C sum_j s_j zeta(j - sigma, N)."""
    if isinstance(x, Jet):
        raise TypeError("zeta continuation is implemented for scalar points only")
    if spec.harmonic_weight is not None:
        raise TypeError("zeta continuation does not support harmonic weights")
    if Fraction(spec.base) != 1 or spec.alternating or spec.balance != 0:
        raise ValueError("zeta continuation needs a balanced, non-alternating z = 1 series")
    wp = working_precision(prec)
    with mpmath.workprec(wp):
        probe = TermStream(spec, x, k)
        if probe.limit is not None:
            return _finite(probe, prec)
        sigma_f = probe.growth()
    extra = int(max(0.0, sigma_f + 1) * math.log2(max(64, wp)) * 1.2) + 16
    N1 = head or max(64, wp)
    N2 = N1 + N1 // 2
    with mpmath.workprec(wp + extra):
        eps_w = mpf(2) ** (-(wp + extra))
        v1, sig = _zeta_value(spec, x, k, N1, eps_w, prec)
        v2, _ = _zeta_value(spec, x, k, N2, eps_w, prec)
    with mpmath.workprec(wp):
        v1, v2 = +v1, +v2
        agreement = abs(v1 - v2)
        tol = _default_eps(prec) if eps is None else mpf(eps)
        if agreement > DISAGREEMENT_FACTOR * max(tol, _default_eps(prec) * abs(v1)):
            raise MethodDisagreement(f"zeta tails at N={N1}, {N2} disagree by {mpmath.nstr(agreement, 5)}",
                                     {f"N={N1}": v1, f"N={N2}": v2})
        return SumResult(v1, N1, "zeta", None, agreement, {f"N={N2}": v2}, prec)


def _zeta_value(spec, x, k, N, eps, prec):
    stream = TermStream(spec, _lift(x), k)
    terms = stream.ensure(N)
    head = mpmath.fsum(terms)
    J = int(math.ceil(mpmath.mp.prec / math.log2(N))) + 8
    # log of Gamma(n+a)^p ratios beyond the n^sigma factor
    logser = [mpf(0)] * (J + 1)
    sigma = mpf(0)
    log_c = mpf(0)
    sign_c = 1
    pt = stream.pt
    exact_sigma = Fraction(0) if (pt.x_exact is not None or spec.param == "k") else None
    for f, exact, num, _ in stream._factors:
        p = f.power
        sigma += p * num
        if exact_sigma is not None and exact is not None:
            exact_sigma += p * exact
        else:
            exact_sigma = None
        g = mpmath.rgamma(num)
        if g == 0:
            raise PochhammerSingularity(f"Gamma pole at offset {num}")
        log_c += p * mpmath.log(abs(g))
        if g < 0 and p % 2:
            sign_c = -sign_c
        bp = bernoulli_polys(J + 1, num)
        for kk in range(1, J + 1):
            coef = bp[kk + 1] / (kk * (kk + 1))
            logser[kk] += p * (coef if kk % 2 else -coef)
    series = Jet(logser).exp()
    lead_prod = mpf(1)
    deg_shift = 0
    for coeffs, sgn in _weight_polys(stream):
        lead, d, wser = _w_series(coeffs, J)
        if sgn > 0:
            series = series * wser
            lead_prod *= lead
            deg_shift += d
        else:
            series = series / wser
            lead_prod /= lead
            deg_shift -= d
    sigma += deg_shift
    if exact_sigma is not None:
        exact_sigma += deg_shift
    svals = []
    for j in range(J + 1):
        if exact_sigma is not None:
            if j - exact_sigma == 1:
                raise PoleAtX(f"zeta continuation has a pole (sigma = {exact_sigma})")
        elif abs(j - sigma - 1) < mpf(2) ** (-(prec // 2)):
            raise PoleAtX(f"zeta continuation is within 2^-{prec // 2} of a pole")
        svals.append(j - sigma)
    zetas = hurwitz_tail(svals, N, eps)
    C = sign_c * mpmath.exp(log_c) * lead_prod
    tail = C * mpmath.fsum(series[j] * zetas[j] for j in range(J + 1))
    return head + tail, sigma


def _weight_polys(stream: TermStream):
    yield stream._w, 1
    if stream._e is not None:
        yield stream._e[0], 1
        yield stream._e[1], -1


# -- dispatch ----------------------------------------------------------------

METHODS = ("direct", "cvz", "zeta")


def choose_method(spec: HyperSeriesSpec) -> str:
    z = Fraction(spec.base)
    if abs(z) < 1 or (abs(z) == 1 and spec.balance < 0):
        return "direct"
    if z == 1 and spec.balance == 0:
        return "cvz" if spec.alternating else "zeta"
    raise NoConvergence(f"series with base {z} and balance {spec.balance} diverges")


def sum_series(spec: HyperSeriesSpec, x=Fraction(0), prec: int = 256, eps=None, k=Fraction(0),
               method: str | None = None) -> SumResult:
    method = method or choose_method(spec)
    if method == "direct":
        return sum_direct(spec, x, prec, eps, k)
    if method == "cvz":
        return sum_alternating(spec, x, prec, eps, k)
    if method == "zeta":
        return sum_zeta_tail(spec, x, prec, eps, k)
    raise ValueError(f"unknown method {method!r}")


# -- prefactors and scaled series -------------------------------------------

@dataclass(frozen=True)
class Prefactor:
    """const * sqrt(const_sqrt) * base^p * prod (c)_p^e * rat_num(p)/rat_den(p)."""

    const: Fraction = Fraction(1)
    const_sqrt: Fraction = Fraction(1)
    base: Fraction = Fraction(1)
    gammas: tuple = ()          # ((c, e), ...)
    rat_num: tuple = (Fraction(1),)
    rat_den: tuple = (Fraction(1),)

    def evaluate(self, p, prec: int):
        wp = working_precision(prec)
        with mpmath.workprec(wp):
            if isinstance(p, Jet):
                return self._jet(p, prec)
            exact = Fraction(p) if isinstance(p, (Fraction, int)) else None
            pv = to_mpf(exact) if exact is not None else mpf(p)
            val = to_mpf(Fraction(self.const))
            if self.const_sqrt != 1:
                val *= mpmath.sqrt(to_mpf(Fraction(self.const_sqrt)))
            if self.base != 1:
                val *= mpmath.power(to_mpf(Fraction(self.base)), pv)
            for c, e in self.gammas:
                val *= _gamma_ratio(Fraction(c), exact, pv) ** e
            num = [Fraction(q) for q in self.rat_num]
            den = [Fraction(q) for q in self.rat_den]
            if exact is not None:
                dv = horner(den, exact)
                if dv == 0:
                    raise PoleAtX(f"prefactor denominator vanishes at {exact}")
                return val * to_mpf(horner(num, exact)) / to_mpf(dv)
            dv = horner([to_mpf(q) for q in den], pv)
            if dv == 0:
                raise PoleAtX("prefactor denominator vanishes")
            return val * horner([to_mpf(q) for q in num], pv) / dv

    def _jet(self, xj: Jet, prec: int) -> Jet:
        K, c0 = xj.order, xj.center
        val = Jet.constant(to_mpf(Fraction(self.const)), K, c0)
        if self.const_sqrt != 1:
            val = val * mpmath.sqrt(to_mpf(Fraction(self.const_sqrt)))
        if self.base != 1:
            val = val * pow_jet(self.base, c0, K, prec)
        for c, e in self.gammas:
            val = val * gamma_ratio_jet(Fraction(c), c0, K, prec) ** e
        num = horner([to_mpf(Fraction(q)) for q in self.rat_num], xj)
        den = horner([to_mpf(Fraction(q)) for q in self.rat_den], xj)
        num = num if isinstance(num, Jet) else Jet.constant(num, K, c0)
        den = den if isinstance(den, Jet) else Jet.constant(den, K, c0)
        if horner([Fraction(q) for q in self.rat_den], c0) == 0:
            raise PoleAtCenter(f"prefactor denominator vanishes at x={c0}")
        return val * num / den

    def vanishing_order(self) -> int:
        """Order of the zero of rat_num at p = 0."""
        for i, q in enumerate(self.rat_num):
            if Fraction(q) != 0:
                return i
        return 0


def _gamma_ratio(c: Fraction, exact, pv):
    """(c)_p = Gamma(c+p)/Gamma(c) for real p."""
    if exact is not None:
        if exact.denominator == 1 and exact >= 0:
            return to_mpf(poch_exact(c, int(exact)))
        a = c + exact
        if a <= 0 and a.denominator == 1:
            raise PoleAtX(f"Gamma({c}+x) has a pole at x={exact}")
        return mpmath.gamma(to_mpf(a)) * mpmath.rgamma(to_mpf(c))
    return mpmath.gamma(to_mpf(c) + pv) * mpmath.rgamma(to_mpf(c))


@dataclass(frozen=True)
class ScaledSeries:
    prefactor: Prefactor
    series: HyperSeriesSpec

    def evaluate(self, x=Fraction(0), prec: int = 256, eps=None, k=Fraction(0),
                 method: str | None = None) -> SumResult:
        p = x if self.series.param == "x" else Fraction(k)
        pref = self.prefactor.evaluate(p, prec)
        res = sum_series(self.series, x, prec, eps, k, method)
        wp = working_precision(prec)
        with mpmath.workprec(wp):
            scale = accel.magnitude(pref)
            res.value = pref * res.value
            if res.tail_bound is not None:
                res.tail_bound = res.tail_bound * scale
            if res.agreement is not None:
                res.agreement = res.agreement * scale
            res.alternatives = {key: pref * v for key, v in res.alternatives.items()}
        return res


def sum_extended(record_or_series, x=Fraction(0), prec: int = 256, eps=None) -> SumResult:
    """Value of an extended series z^x prod (c)_x^e * sum_n (...), given a
    catalog identity record (its lhs) or a ``ScaledSeries``."""
    target = getattr(record_or_series, "lhs", record_or_series)
    return target.evaluate(x, prec, eps)


# -- limits at removable singularities --------------------------------------

EXTRAPOLATION_STEP = Fraction(1, 2 ** 24)
EXTRAPOLATION_POINTS = 12


def limit_extrapolate(f: Callable, x0, prec: int, h=EXTRAPOLATION_STEP,
                      points: int = EXTRAPOLATION_POINTS):
    """One-sided polynomial extrapolation of f(x0 + j h), j = 1..points, to x0.

    Returns ``(value, estimate)`` where the estimate compares the
    ``points`` and ``points - 1`` extrapolants.
    """
    x0 = Fraction(x0) if isinstance(x0, (Fraction, int)) else x0
    vals = []
    for j in range(1, points + 1):
        xj = x0 + j * h
        vals.append(f(xj))
    wp = working_precision(prec)
    with mpmath.workprec(wp):
        def extrap(m):
            acc = mpf(0)
            for j in range(1, m + 1):
                w = math.comb(m, j) * (1 if j % 2 else -1)
                acc += w * vals[j - 1]
            return acc
        full = extrap(points)
        return full, abs(full - extrap(points - 1))


# -- auxiliary harmonic formulas ---------------------------------------------

HARMONIC_VARIANTS = ("forchu", "forGuthesis", "harmoniciden")


def harmonic_series_eval(variant: str, x=Fraction(0), prec: int = 256, catalog=None):
    """Left-hand sides of the three auxiliary formulas (forchu, forGuthesis,
    harmoniciden) as stored in the catalog."""
    if variant not in HARMONIC_VARIANTS:
        raise KeyError(f"unknown variant {variant!r}")
    if catalog is None:
        from .catalog import default_catalog
        catalog = default_catalog()
    rec = catalog.lemma(variant)
    return rec.series.evaluate(x, prec).value
