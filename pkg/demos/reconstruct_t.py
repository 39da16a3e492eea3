"""Recover the closed form t(x) from a handful of sampled values.

With q = cos(pi x) and a guessed denominator D(q), the product
pi^2 * t * D is a polynomial in q. Five samples pin down its
coefficients numerically, and rational reconstruction makes them exact.
"""
from fractions import Fraction

import mpmath

from wzlab.analysis import format_poly, guess_t, parse_poly

qs = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)]

for rid, den in (("idenpi2-cubic", "4c^4-c^2"), ("idenpi2-quartic", "2c^4-c^2")):
    res = guess_t(rid, parse_poly(den), qs, precision=256)
    print(f"{rid}: t(x) = ({format_poly(res.model.numerator)}) / (pi^{res.model.pi_power} ({den}))")
    print(f"  fit residual {mpmath.nstr(res.fit_residual, 3)}; "
          f"samples taken as limits: {[str(q) for q, e in zip(qs, res.extrapolated) if e]}")

# a wrong guess leaves coefficients with no small rational form
try:
    guess_t("idenpi2-cubic", parse_poly("c^4"), qs, precision=256)
except Exception as exc:
    print(f"\ndenominator c^4: {type(exc).__name__}")
