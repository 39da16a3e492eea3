"""Truncated Taylor series ("jets") over mpf.

A ``Jet`` holds the coefficients of ``(x - center)^0 .. (x - center)^K``.
Arithmetic truncates at the order of the operands.  The same class doubles
as a formal power series in ``w = 1/n`` for asymptotic expansions.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath import mpf

from .errors import DivisionByZeroConstantTerm, NonPositiveBase, PochhammerSingularity, PoleAtCenter
from .exact import horner, poch_exact
from .mpreal import (
    TrigRationalModel,
    const_pi,
    cospi,
    polygamma,
    sinpi,
    to_mpf,
    working_precision,
)

DEFAULT_ORDER = 6
DIRECT_POCH_LIMIT = 48


def _scalar(v):
    if isinstance(v, Fraction):
        return to_mpf(v)
    return v


class Jet:
    __slots__ = ("coeffs", "center")

    def __init__(self, coeffs: Sequence, center=Fraction(0)):
        if not coeffs:
            raise ValueError("a jet needs at least one coefficient")
        self.coeffs = [mpf(_scalar(c)) for c in coeffs]
        self.center = Fraction(center)

    # construction ---------------------------------------------------------
    @classmethod
    def constant(cls, value, order: int = DEFAULT_ORDER, center=Fraction(0)) -> "Jet":
        return cls([_scalar(value)] + [0] * order, center)

    @classmethod
    def variable(cls, center=Fraction(0), order: int = DEFAULT_ORDER) -> "Jet":
        """The jet of x itself around ``center``."""
        coeffs = [to_mpf(Fraction(center)), 1] + [0] * (order - 1)
        return cls(coeffs[: order + 1], center)

    @classmethod
    def linear(cls, c0, c1, order: int, center=Fraction(0)) -> "Jet":
        coeffs = [_scalar(c0), _scalar(c1)] + [0] * (order - 1)
        return cls(coeffs[: order + 1], center)

    # basics ---------------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self):
        body = ", ".join(mpmath.nstr(c, 12) for c in self.coeffs)
        return f"Jet([{body}], center={self.center})"

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def norm(self):
        return max(abs(c) for c in self.coeffs)

    def value(self):
        return self.coeffs[0]

    def evaluate(self, delta):
        """Sum the truncated series at x = center + delta."""
        return horner(self.coeffs, _scalar(delta))

    def derivative_values(self) -> list:
        """f^(m)(center) = m! * coeffs[m]."""
        return [c * math.factorial(m) for m, c in enumerate(self.coeffs)]

    def rescaled(self, factor) -> "Jet":
        """Coefficients in the variable u with x - center = factor * u."""
        f = _scalar(factor)
        return Jet([c * f ** m for m, c in enumerate(self.coeffs)], self.center)

    def _like(self, coeffs):
        out = Jet.__new__(Jet)
        out.coeffs = coeffs
        out.center = self.center
        return out

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.center != self.center:
                raise ValueError("jets with different centers")
            return other
        return self._like([mpf(_scalar(other))] + [mpf(0)] * self.order)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Jet):
            coeffs = list(self.coeffs)
            coeffs[0] = coeffs[0] + _scalar(other)
            return self._like(coeffs)
        other = self._coerce(other)
        k = min(self.order, other.order)
        return self._like([a + b for a, b in zip(self.coeffs[: k + 1], other.coeffs[: k + 1])])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __pos__(self):
        return self._like([+c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -_scalar(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            s = _scalar(other)
            return self._like([c * s for c in self.coeffs])
        other = self._coerce(other)
        k = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for m in range(k + 1):
            acc = mpf(0)
            for i in range(m + 1):
                if a[i] and b[m - i]:
                    acc += a[i] * b[m - i]
            out.append(acc)
        return self._like(out)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        b = self.coeffs
        if b[0] == 0:
            raise DivisionByZeroConstantTerm("jet constant term is zero")
        inv0 = 1 / b[0]
        out = [inv0]
        for m in range(1, len(b)):
            acc = mpf(0)
            for i in range(1, m + 1):
                if b[i]:
                    acc += b[i] * out[m - i]
            out.append(-acc * inv0)
        return self._like(out)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            s = _scalar(other)
            if s == 0:
                raise DivisionByZeroConstantTerm("division of a jet by zero")
            return self._like([c / s for c in self.coeffs])
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * _scalar(other)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return (self.log() * _scalar(e)).exp()
        if e < 0:
            return self.reciprocal() ** (-e)
        out = self._like([mpf(1)] + [mpf(0)] * self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def mul_linear(self, c0, c1) -> "Jet":
        """Multiply by (c0 + c1 * delta) in O(K)."""
        a = self.coeffs
        out = [a[0] * c0]
        for m in range(1, len(a)):
            out.append(a[m] * c0 + a[m - 1] * c1)
        return self._like(out)

    def div_linear(self, c0, c1) -> "Jet":
        """Divide by (c0 + c1 * delta) in O(K)."""
        if c0 == 0:
            raise DivisionByZeroConstantTerm("linear divisor vanishes at the center")
        a = self.coeffs
        out = [a[0] / c0]
        for m in range(1, len(a)):
            out.append((a[m] - c1 * out[m - 1]) / c0)
        return self._like(out)

    # transcendental -------------------------------------------------------
    def exp(self) -> "Jet":
        a = self.coeffs
        out = [mpmath.exp(a[0])]
        for m in range(1, len(a)):
            acc = mpf(0)
            for i in range(1, m + 1):
                if a[i]:
                    acc += i * a[i] * out[m - i]
            out.append(acc / m)
        return self._like(out)

    def log(self) -> "Jet":
        a = self.coeffs
        if a[0] == 0:
            raise DivisionByZeroConstantTerm("log of a jet with zero constant term")
        if a[0] < 0:
            raise ValueError("log of a jet with negative constant term")
        out = [mpmath.log(a[0])]
        for m in range(1, len(a)):
            acc = m * a[m]
            for i in range(1, m):
                if out[i]:
                    acc -= i * out[i] * a[m - i]
            out.append(acc / (m * a[0]))
        return self._like(out)


def is_jet(v) -> bool:
    return isinstance(v, Jet)


# -- special jets ------------------------------------------------------------

def _series_from_log_derivs(value, derivs, center, order) -> Jet:
    """value * exp(sum_m derivs[m] delta^m), derivs[0] ignored."""
    log_part = Jet([0] + list(derivs[1: order + 1]), center)
    return log_part.exp() * value


def poch_jet(c, n: int, center=Fraction(0), order: int = DEFAULT_ORDER, prec: int = 256) -> Jet:
    """Jet of x -> (c + x)_n around ``center``."""
    c = Fraction(c)
    center = Fraction(center)
    a = c + center
    if any(a + j == 0 for j in range(n)):
        raise PochhammerSingularity(f"({c}+x)_{n} has a zero factor at x={center}")
    wp = working_precision(prec)
    with mpmath.workprec(wp):
        if n <= DIRECT_POCH_LIMIT or a <= 0:
            out = Jet.constant(1, order, center)
            for j in range(n):
                out = out.mul_linear(to_mpf(a + j), 1)
            return out
        value = to_mpf(poch_exact(a, n))
        derivs = [mpf(0)]
        for m in range(1, order + 1):
            d = polygamma(m - 1, a + n, prec) - polygamma(m - 1, a, prec)
            derivs.append(d / math.factorial(m))
        return _series_from_log_derivs(value, derivs, center, order)


def gamma_ratio_jet(c, center=Fraction(0), order: int = DEFAULT_ORDER, prec: int = 256) -> Jet:
    """Jet of x -> (c)_x = Gamma(c + x) / Gamma(c)."""
    c = Fraction(c)
    a = c + Fraction(center)
    if a <= 0:
        raise PochhammerSingularity(f"Gamma({c}+x) needs a positive argument at x={center}")
    wp = working_precision(prec)
    with mpmath.workprec(wp):
        value = mpmath.gamma(to_mpf(a)) * mpmath.rgamma(to_mpf(c))
        derivs = [mpf(0)] + [polygamma(m - 1, a, prec) / math.factorial(m) for m in range(1, order + 1)]
        return _series_from_log_derivs(value, derivs, center, order)


def pow_jet(z, center=Fraction(0), order: int = DEFAULT_ORDER, prec: int = 256) -> Jet:
    """Jet of x -> z^x."""
    z = Fraction(z)
    if z <= 0:
        raise NonPositiveBase(f"z^x needs z > 0, got {z}")
    wp = working_precision(prec)
    with mpmath.workprec(wp):
        zf = to_mpf(z)
        lz = mpmath.log(zf)
        value = mpmath.power(zf, to_mpf(Fraction(center)))
        coeffs = [value]
        for m in range(1, order + 1):
            coeffs.append(coeffs[-1] * lz / m)
        return Jet(coeffs, center)


def cospi_jet(center=Fraction(0), order: int = DEFAULT_ORDER, prec: int = 256) -> Jet:
    wp = working_precision(prec)
    c, s = cospi(center, prec), sinpi(center, prec)
    with mpmath.workprec(wp):
        pi = const_pi(prec)
        cycle = (c, -s, -c, s)
        coeffs = []
        pm = mpf(1)
        for m in range(order + 1):
            coeffs.append(cycle[m % 4] * pm / math.factorial(m))
            pm *= pi
        return Jet(coeffs, center)


def trig_t_jet(model: TrigRationalModel, center=Fraction(0), order: int = DEFAULT_ORDER,
               prec: int = 256) -> Jet:
    wp = working_precision(prec)
    cj = cospi_jet(center, order, prec)
    with mpmath.workprec(wp):
        num = horner([to_mpf(Fraction(q)) for q in model.numerator], cj)
        den = horner([to_mpf(Fraction(q)) for q in model.denominator], cj)
        num = num if isinstance(num, Jet) else Jet.constant(num, order, center)
        den = den if isinstance(den, Jet) else Jet.constant(den, order, center)
        scale = sum(abs(to_mpf(Fraction(q))) for q in model.denominator)
        if abs(den[0]) <= mpf(2) ** (32 - prec) * scale:
            raise PoleAtCenter(f"t-model denominator vanishes at x={center}")
        return num / den / const_pi(prec) ** model.pi_power
