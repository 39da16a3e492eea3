"""Arbitrary-precision reals on top of ``mpmath.mpf``.

Every public function takes the *requested* precision in bits and works
internally with ``GUARD_BITS`` extra.  Constants are memoized per precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
from mpmath import mpf

from . import accel
from .errors import NonPositiveArgument, PoleAtX
from .exact import horner

GUARD_BITS = 64
MIN_PRECISION = 16


def working_precision(prec: int) -> int:
    return int(prec) + GUARD_BITS


def to_mpf(value):
    """Fraction/int/str/mpf -> mpf at the current context precision."""
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    return mpf(value)


def mpf_to_fraction(v) -> Fraction:
    """Exact binary value of an mpf."""
    sign, man, exp, _ = mpmath.mpf(v)._mpf_
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def _check_prec(prec):
    if prec < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION} bits")


# -- Bernoulli numbers -------------------------------------------------------

_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli_numbers(n: int) -> list[Fraction]:
    """B_0..B_n with B_1 = -1/2."""
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        if m > 1 and m % 2 == 1:
            _BERNOULLI.append(Fraction(0))
            continue
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * _BERNOULLI[k]
            binom = binom * (m + 1 - k) // (k + 1)
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[: n + 1]


def bernoulli_polys(m_max: int, a) -> list:
    """[B_0(a), ..., B_{m_max}(a)] evaluated in the current mpf context."""
    bs = [to_mpf(b) for b in bernoulli_numbers(m_max)]
    a = to_mpf(a) if isinstance(a, Fraction) else a
    powers = [mpf(1)]
    for _ in range(m_max):
        powers.append(powers[-1] * a)
    out = []
    for m in range(m_max + 1):
        acc = mpf(0)
        binom = 1
        for k in range(m + 1):
            if bs[k]:
                acc += binom * bs[k] * powers[m - k]
            binom = binom * (m - k) // (k + 1)
        out.append(acc)
    return out


# -- constants ---------------------------------------------------------------

@lru_cache(maxsize=None)
def const_pi(prec: int):
    """pi by the Gauss-Legendre (Brent-Salamin) AGM iteration."""
    _check_prec(prec)
    wp = working_precision(prec)
    with mpmath.workprec(wp + 16):
        a, b, t, p = mpf(1), 1 / mpmath.sqrt(2), mpf(1) / 4, mpf(1)
        while abs(a - b) > mpf(2) ** (-(wp + 8)):
            an = (a + b) / 2
            b = mpmath.sqrt(a * b)
            t -= p * (a - an) ** 2
            a = an
            p *= 2
        val = (a + b) ** 2 / (4 * t)
    with mpmath.workprec(wp):
        return +val


@lru_cache(maxsize=None)
def const_ln2(prec: int):
    """ln 2 = 2 atanh(1/3) = sum 2 / ((2k+1) 3^(2k+1))."""
    _check_prec(prec)
    wp = working_precision(prec)
    with mpmath.workprec(wp + 16):
        s = mpf(0)
        term = mpf(2) / 3
        k = 0
        eps = mpf(2) ** (-(wp + 8))
        while term > eps:
            s += term / (2 * k + 1)
            term /= 9
            k += 1
    with mpmath.workprec(wp):
        return +s


@lru_cache(maxsize=None)
def const_catalan(prec: int):
    """Catalan's constant: CVZ acceleration of sum (-1)^n/(2n+1)^2."""
    _check_prec(prec)
    wp = working_precision(prec)
    with mpmath.workprec(wp + 32):
        n = accel.cvz_terms_needed(wp + 16)
        terms = [mpf(1) / (2 * k + 1) ** 2 for k in range(n)]
        val = accel.cvz_alternating(terms)
    with mpmath.workprec(wp):
        return +val


@lru_cache(maxsize=None)
def const_zeta3(prec: int):
    """zeta(3) = 5/2 sum_{n>=1} (-1)^(n-1) / (n^3 C(2n, n))."""
    _check_prec(prec)
    wp = working_precision(prec)
    with mpmath.workprec(wp + 16):
        s = mpf(0)
        binom = 1
        n = 1
        eps = mpf(2) ** (-(wp + 8))
        while True:
            binom = binom * 2 * (2 * n - 1) // n
            term = mpf(1) / (mpf(n) ** 3 * binom)
            s += term if n % 2 else -term
            if term < eps:
                break
            n += 1
        val = 5 * s / 2
    with mpmath.workprec(wp):
        return +val


CONSTANT_TAGS = ("1", "pi", "1/pi", "1/pi^2", "pi^2", "G", "zeta3", "ln2", "ln2/pi")


def tag_value(tag: str, prec: int):
    """Numerical value of a symbolic basis constant."""
    wp = working_precision(prec)
    with mpmath.workprec(wp):
        pi = const_pi(prec)
        table = {
            "1": lambda: mpf(1),
            "pi": lambda: +pi,
            "1/pi": lambda: 1 / pi,
            "1/pi^2": lambda: 1 / pi ** 2,
            "pi^2": lambda: pi ** 2,
            "G": lambda: +const_catalan(prec),
            "zeta3": lambda: +const_zeta3(prec),
            "ln2": lambda: +const_ln2(prec),
            "ln2/pi": lambda: const_ln2(prec) / pi,
        }
        if tag not in table:
            raise KeyError(f"unknown constant tag {tag!r}")
        return table[tag]()


# -- polygamma ---------------------------------------------------------------

def polygamma(m: int, a, prec: int):
    """psi^(m)(a) for real a > 0.

    Shifts a up to max(20, prec/4) with the recurrence, then applies the
    Bernoulli asymptotic series.
    """
    _check_prec(prec)
    if m < 0:
        raise ValueError("order m must be non-negative")
    wp = working_precision(prec)
    with mpmath.workprec(wp + 16):
        a = to_mpf(a) if isinstance(a, (Fraction, int)) else mpf(a)
        if a <= 0:
            raise NonPositiveArgument(f"polygamma needs a > 0, got {a}")
        threshold = max(20, prec // 4)
        shift = max(0, int(math.ceil(threshold - a)))
        sign = -1 if m % 2 else 1
        fact_m = math.factorial(m)
        corr = mpf(0)
        for j in range(shift):
            corr += 1 / (a + j) ** (m + 1)
        x = a + shift
        eps = mpf(2) ** (-(wp + 8))
        if m == 0:
            val = mpmath.log(x) - 1 / (2 * x)
        else:
            val = mpf(math.factorial(m - 1)) / x ** m + mpf(fact_m) / (2 * x ** (m + 1))
        x2 = x * x
        xpow = x ** m if m else mpf(1)
        k = 1
        prev = None
        while True:
            b2k = bernoulli_numbers(2 * k)[2 * k]
            xpow *= x2
            if m == 0:
                term = to_mpf(b2k) / (2 * k * xpow)
                val -= term
            else:
                coef = math.factorial(2 * k + m - 1) / Fraction(math.factorial(2 * k))
                term = to_mpf(b2k * coef) / xpow
                val += term
            size = abs(term)
            if size < eps * abs(val):
                break
            if prev is not None and size > prev:
                break
            prev = size
            k += 1
        if m > 0:
            val = val if m % 2 else -val
            # asymptotic form above is for (-1)^(m+1) psi^(m)
        out = val - sign * fact_m * corr
    with mpmath.workprec(wp):
        return +out


# -- trigonometric helpers ---------------------------------------------------

def _reduce_mod2(x):
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        return x - 2 * (x.numerator // (2 * x.denominator))
    return x - 2 * mpmath.floor(x / 2)


def cospi(x, prec: int):
    """cos(pi x); the reduction mod 2 is exact for rational x."""
    wp = working_precision(prec)
    r = _reduce_mod2(x)
    with mpmath.workprec(wp):
        if isinstance(r, Fraction):
            exact = {Fraction(0): 1, Fraction(1, 2): 0, Fraction(1): -1, Fraction(3, 2): 0,
                     Fraction(1, 3): mpf(1) / 2, Fraction(2, 3): -mpf(1) / 2,
                     Fraction(4, 3): -mpf(1) / 2, Fraction(5, 3): mpf(1) / 2}
            if r in exact:
                return mpf(exact[r])
            r = to_mpf(r)
        return mpmath.cos(const_pi(prec) * r)


def sinpi(x, prec: int):
    wp = working_precision(prec)
    r = _reduce_mod2(x)
    with mpmath.workprec(wp):
        if isinstance(r, Fraction):
            exact = {Fraction(0): 0, Fraction(1, 2): 1, Fraction(1): 0, Fraction(3, 2): -1}
            if r in exact:
                return mpf(exact[r])
            r = to_mpf(r)
        return mpmath.sin(const_pi(prec) * r)


@dataclass(frozen=True)
class TrigRationalModel:
    """t(x) = numerator(c) / denominator(c) / pi^pi_power with c = cos(pi x).

    Odd (antiperiodic) models simply carry odd powers of c.
    """

    numerator: tuple
    denominator: tuple = (Fraction(1),)
    pi_power: int = 1

    def value_at_zero(self) -> Fraction:
        """Rational multiplier of pi^-pi_power at x = 0 (c = 1)."""
        return Fraction(sum(self.numerator)) / Fraction(sum(self.denominator))

    def parity(self) -> int | None:
        """+1 if t(x+1) = t(x), -1 if t(x+1) = -t(x), None otherwise."""
        def flip(p):
            return tuple(c if i % 2 == 0 else -c for i, c in enumerate(p))
        from .exact import poly_mul
        a = poly_mul(flip(self.numerator), self.denominator)
        b = poly_mul(self.numerator, flip(self.denominator))
        if a == b:
            return 1
        if a == tuple(-c for c in b):
            return -1
        return None


def trig_t_eval(model: TrigRationalModel, x, prec: int):
    wp = working_precision(prec)
    c = cospi(x, prec)
    with mpmath.workprec(wp):
        num = horner([to_mpf(Fraction(q)) for q in model.numerator], c)
        den = horner([to_mpf(Fraction(q)) for q in model.denominator], c)
        scale = sum(abs(to_mpf(Fraction(q))) for q in model.denominator)
        if abs(den) <= mpf(2) ** (32 - prec) * scale:
            raise PoleAtX(f"t-model denominator vanishes at x={x}")
        return num / den / const_pi(prec) ** model.pi_power
