"""Linear acceleration schemes for alternating series sum (-1)^k a_k.

Both schemes operate on any term type supporting ``+`` and multiplication
by an mpf/int scalar, so jets are accelerated coefficient-wise.  For a
sequence that grows polynomially the values returned are the Abel sums.
"""
from __future__ import annotations

import math

import mpmath
from mpmath import mpf


def magnitude(v):
    """Max-abs size of a scalar or jet, as mpf."""
    norm = getattr(v, "norm", None)
    if norm is not None:
        return norm()
    return abs(mpf(v))


def cvz_terms_needed(bits: float, growth: float = 0.0) -> int:
    # error ~ n^(2 growth) (3+sqrt 8)^-n
    n = int(math.ceil(bits / 2.543)) + 8
    if growth > 0:
        for _ in range(4):
            n = int(math.ceil((bits + 2 * growth * math.log2(max(n, 2))) / 2.543)) + 8
    return n


def cvz_alternating(terms):
    """Cohen-Rodriguez Villegas-Zagier (algorithm 1) over all given terms."""
    n = len(terms)
    if n == 0:
        return mpf(0)
    d = (3 + mpmath.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = mpf(-1)
    c = -d
    s = 0
    for k in range(n):
        c = b - c
        s = terms[k] * c + s
        b = b * (k + n) * (k - n) / ((k + mpf(0.5)) * (k + 1))
    return s * (1 / d)


def euler_alternating(terms, eps, *, patience: int = 3):
    """Euler transform sum_k (sum_j C(k,j) (-1)^j a_j) / 2^(k+1).

    ``terms`` is an indexable sequence; summation stops once ``patience``
    consecutive transformed terms fall below ``eps``.  Returns
    ``(value, terms_used, converged)``.
    """
    s = 0
    quiet = 0
    scale = mpf(1)
    for k in range(len(terms)):
        d = 0
        binom = 1
        for j in range(k + 1):
            if j & 1:
                d = d - terms[j] * binom
            else:
                d = terms[j] * binom + d
            binom = binom * (k - j) // (j + 1)
        scale = scale / 2
        t = d * scale
        s = t + s
        if magnitude(t) <= eps:
            quiet += 1
            if quiet >= patience:
                return s, k + 1, True
        else:
            quiet = 0
    return s, len(terms), False
