"""Exact rational arithmetic: Pochhammer products, bivariate rational
functions and WZ-pair descriptions checked cell by cell in ``Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import KernelMismatch, PoleAtPoint

Rat = Fraction


def as_rat(value) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def rat_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def horner(coeffs: Sequence, x):
    """Evaluate a low-order-first coefficient sequence at ``x`` (any ring)."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poch_exact(c, n: int) -> Fraction:
    """Rising factorial (c)_n = c (c+1) ... (c+n-1) as an exact Fraction."""
    c = as_rat(c)
    if n < 0:
        raise ValueError("n must be non-negative")
    r = Fraction(1)
    for j in range(n):
        r *= c + j
    return r


# -- univariate polynomials (tuples, low order first) -----------------------

def poly_trim(p: Sequence) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(p: Sequence, q: Sequence) -> tuple:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_mul(p: Sequence, q: Sequence) -> tuple:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p: Sequence, q: Sequence) -> tuple[tuple, tuple]:
    p = [Fraction(c) for c in poly_trim(p)]
    q = [Fraction(c) for c in poly_trim(q)]
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        f = p[-1] / q[-1]
        quot[shift] = f
        for i, c in enumerate(q):
            p[i + shift] -= f * c
        p = list(poly_trim(p))
    return poly_trim(quot), poly_trim(p)


def poly_gcd(p: Sequence, q: Sequence) -> tuple:
    """Monic gcd over Q."""
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ()
    lead = Fraction(a[-1])
    return tuple(Fraction(c) / lead for c in a)


def poly_ldegree(p: Sequence) -> int:
    """Index of the lowest nonzero coefficient (order of vanishing at 0)."""
    for i, c in enumerate(p):
        if c != 0:
            return i
    raise ValueError("zero polynomial")


# -- bivariate polynomials and rational functions ---------------------------

class BiPoly:
    """Polynomial in (n, p) with exact coefficients; ``p`` is a parameter
    variable (k for WZ pairs, x or k for series weights)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = as_rat(c) if not isinstance(c, int) else Fraction(c)
            if c != 0:
                clean[(int(i), int(j))] = c
        self.terms = clean

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def n(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def p(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def from_nested(cls, rows) -> "BiPoly":
        """rows[i][j] is the coefficient of n^i p^j."""
        return cls({(i, j): as_rat(c) for i, row in enumerate(rows) for j, c in enumerate(row)})

    def to_nested(self) -> list[list[str]]:
        if not self.terms:
            return [["0/1"]]
        di = max(i for i, _ in self.terms)
        dj = max(j for _, j in self.terms)
        return [[rat_str(self.terms.get((i, j), Fraction(0))) for j in range(dj + 1)]
                for i in range(di + 1)]

    def _coerce(self, other) -> "BiPoly":
        return other if isinstance(other, BiPoly) else BiPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BiPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"BiPoly({self.to_nested()})"

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, n, p):
        """Evaluate at (n, p); ``p`` may be any ring element (mpf, Jet, ...).
        Exact inputs give a Fraction."""
        deg_p = max((j for _, j in self.terms), default=0)
        rows = [[] for _ in range(deg_p + 1)]
        for (i, j), c in self.terms.items():
            rows[j].append((i, c))
        coeffs = [sum((c * n ** i for i, c in row), Fraction(0)) if row else 0 for row in rows]
        return horner(coeffs, p)

    def in_n(self, p) -> tuple:
        """Substitute an exact parameter value and return a polynomial in n."""
        p = as_rat(p)
        deg_n = max((i for i, _ in self.terms), default=0)
        out = [Fraction(0)] * (deg_n + 1)
        for (i, j), c in self.terms.items():
            out[i] += c * p ** j
        return poly_trim(out)

    def in_n_generic(self, p) -> list:
        """Coefficients in n after substituting a (possibly inexact) p."""
        deg_n = max((i for i, _ in self.terms), default=0)
        deg_p = max((j for _, j in self.terms), default=0)
        out = []
        for i in range(deg_n + 1):
            row = [self.terms.get((i, j), 0) for j in range(deg_p + 1)]
            out.append(horner(row, p))
        return out


@dataclass(frozen=True)
class BiRat:
    num: BiPoly
    den: BiPoly = field(default_factory=lambda: BiPoly.const(1))

    def __post_init__(self):
        if self.den.is_zero():
            raise ValueError("BiRat denominator is identically zero")

    def __call__(self, n, p):
        d = self.den(n, p)
        if d == 0:
            raise PoleAtPoint(f"denominator vanishes at n={n}, p={p}")
        return self.num(n, p) / d

    def at_param(self, p) -> tuple[tuple, tuple]:
        """Univariate (num, den) in n for an exact parameter, common factors
        cancelled (removes 0/0 such as n(...)/n at p=0)."""
        num, den = self.num.in_n(p), self.den.in_n(p)
        if not den:
            raise PoleAtPoint(f"denominator vanishes identically at p={p}")
        g = poly_gcd(num, den) if num else ()
        if g and len(g) > 1:
            num = poly_divmod(num, g)[0]
            den = poly_divmod(den, g)[0]
        return num, den


# -- Pochhammer factors and WZ pairs ----------------------------------------

@dataclass(frozen=True)
class PochFactor:
    """(offset + k_coupling*k + x_coupling*x)_n raised to +/- exponent."""

    offset: Fraction
    exponent: int = 1
    side: str = "num"
    k_coupling: Fraction = Fraction(0)
    x_coupling: Fraction = Fraction(0)

    def __post_init__(self):
        if self.exponent == 0:
            raise ValueError("PochFactor exponent must be nonzero")
        if self.side not in ("num", "den"):
            raise ValueError(f"side must be 'num' or 'den', got {self.side!r}")

    @property
    def power(self) -> int:
        return self.exponent if self.side == "num" else -self.exponent

    def base_at(self, k=Fraction(0), x=Fraction(0)):
        return self.offset + self.k_coupling * k + self.x_coupling * x


def kernel_exact(factors: Iterable[PochFactor], n: int, k: int) -> Fraction:
    r = Fraction(1)
    for f in factors:
        v = poch_exact(f.base_at(k=Fraction(k)), n)
        if v == 0 and f.power < 0:
            raise PoleAtPoint(f"Pochhammer denominator vanishes at n={n}, k={k}")
        r *= v ** f.power if v != 0 else Fraction(0)
    return r


@dataclass(frozen=True)
class WZPairSpec:
    """F = kernel * base^n * signs * f_mult, G likewise with g_mult.

    ``g_mult`` may be None when only F is known; ``g_kernel`` overrides the
    kernel used for G (normally shared).
    """

    kernel: tuple[PochFactor, ...]
    base: Fraction
    sign_n: bool
    sign_k: bool
    f_mult: BiRat
    g_mult: BiRat | None
    g_kernel: tuple[PochFactor, ...] | None = None

    @property
    def has_g(self) -> bool:
        return self.g_mult is not None

    def certificate(self) -> BiRat:
        if self.g_mult is None:
            raise ValueError("pair has no G")
        return BiRat(self.g_mult.num * self.f_mult.den, self.g_mult.den * self.f_mult.num)


def _sign(pair: WZPairSpec, n: int, k: int) -> int:
    s = 1
    if pair.sign_n and n % 2:
        s = -s
    if pair.sign_k and k % 2:
        s = -s
    return s


def wz_eval(pair: WZPairSpec, which: str, n: int, k: int) -> Fraction:
    """Exact value of F or G at integer (n, k)."""
    if which not in ("F", "G"):
        raise ValueError("which must be 'F' or 'G'")
    if which == "G" and pair.g_mult is None:
        raise ValueError("pair has no G")
    mult = pair.f_mult if which == "F" else pair.g_mult
    kern = pair.kernel if which == "F" or pair.g_kernel is None else pair.g_kernel
    m = mult(n, k)
    if m == 0:
        return Fraction(0)
    return kernel_exact(kern, n, k) * pair.base ** n * _sign(pair, n, k) * m


@dataclass
class WZGridReport:
    n_max: int
    k_max: int
    cells: int
    nonzero: list = field(default_factory=list)   # (n, k, delta)
    poles: list = field(default_factory=list)     # (n, k, message)

    @property
    def passed(self) -> bool:
        return not self.nonzero and not self.poles

    @property
    def first_failure(self):
        if self.nonzero:
            return self.nonzero[0][:2]
        if self.poles:
            return self.poles[0][:2]
        return None


def wz_check_grid(pair: WZPairSpec, n_max: int = 25, k_max: int = 25) -> WZGridReport:
    """Exact residual of F(n+1,k)-F(n,k) = G(n,k+1)-G(n,k) on [0,n_max]x[0,k_max]."""
    if n_max < 1 or k_max < 1:
        raise ValueError("grid bounds must be >= 1")
    if not pair.has_g:
        raise ValueError("pair has no G; telescoping check not applicable")
    cache: dict = {}

    def val(which, n, k):
        key = (which, n, k)
        if key not in cache:
            cache[key] = wz_eval(pair, which, n, k)
        return cache[key]

    report = WZGridReport(n_max, k_max, (n_max + 1) * (k_max + 1))
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            try:
                delta = (val("F", n + 1, k) - val("F", n, k)) - (val("G", n, k + 1) - val("G", n, k))
            except PoleAtPoint as exc:
                report.poles.append((n, k, str(exc)))
                continue
            if delta != 0:
                report.nonzero.append((n, k, delta))
    return report


@dataclass
class CertificateReport:
    cells: int
    inconsistent: list = field(default_factory=list)   # (n, k, kind, delta)
    poles: list = field(default_factory=list)
    excluded: list = field(default_factory=list)       # cells where F vanishes

    @property
    def passed(self) -> bool:
        return not self.inconsistent and not self.poles


def _kernel_key(factors):
    return sorted((f.offset, f.k_coupling, f.x_coupling, f.power) for f in factors)


def certificate_check(pair: WZPairSpec, n_max: int = 25, k_max: int = 25) -> CertificateReport:
    """Check that C = g_mult/f_mult certifies the pair.

    Two exact conditions per cell: G f_mult == F g_mult, and the telescoping
    relation rebuilt from C alone, F(n+1,k)-F(n,k) = C(n,k+1)F(n,k+1) - C(n,k)F(n,k),
    wherever F(n,k) and F(n,k+1) are nonzero (C has poles where F vanishes).
    """
    if not pair.has_g:
        raise ValueError("pair has no G")
    if pair.g_kernel is not None and _kernel_key(pair.g_kernel) != _kernel_key(pair.kernel):
        raise KernelMismatch("F and G kernels differ; no rational certificate form")
    cert = pair.certificate()
    report = CertificateReport((n_max + 1) * (k_max + 1))
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            try:
                f_nk = wz_eval(pair, "F", n, k)
                lhs = wz_eval(pair, "G", n, k) * pair.f_mult(n, k)
                rhs = f_nk * pair.g_mult(n, k)
                if lhs != rhs:
                    report.inconsistent.append((n, k, "cross", lhs - rhs))
                    continue
                f_nk1 = wz_eval(pair, "F", n, k + 1)
                if f_nk == 0 or f_nk1 == 0:
                    report.excluded.append((n, k))
                    continue
                step = wz_eval(pair, "F", n + 1, k) - f_nk
                via_c = cert(n, k + 1) * f_nk1 - cert(n, k) * f_nk
                if step != via_c:
                    report.inconsistent.append((n, k, "telescoping", step - via_c))
            except PoleAtPoint as exc:
                report.poles.append((n, k, str(exc)))
    return report
