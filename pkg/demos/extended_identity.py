"""Follow one extended identity s1(x) + s2(x) = t(x) away from x = 0.

At x = 0 the second series vanishes and the first is a Ramanujan sum.
Elsewhere both sides are summed to 256 bits and compared, and the
Taylor coefficients at 0 are matched against closed forms.
"""
from fractions import Fraction

import mpmath

from wzlab.analysis import evaluate_parts, expand_identity, format_poly, verify_identity, verify_periodicity
from wzlab.catalog import default_catalog

rid = "iden2"
rec = default_catalog().identity(rid)
prec = 256

m = rec.t_model
print(f"{rid}: t(x) = ({format_poly(m.numerator)}) / (pi^{m.pi_power} ({format_poly(m.denominator)})), c = cos(pi x)\n")
print("    x        s1(x)                      s2(x)                      t(x)")
for x in (Fraction(0), Fraction(1, 10), Fraction(1, 4), Fraction(2, 5)):
    p = evaluate_parts(rec, x, prec)
    print(f"  {str(x):5s}  {mpmath.nstr(p.lhs, 22):25s}  {mpmath.nstr(p.companion, 22):25s}  {mpmath.nstr(p.t, 22)}")

rep = verify_identity(rid, precision=prec)
print(f"\nmax residual over {len(rep.xs)} points: {mpmath.nstr(rep.max_residual, 3)}")
print(f"companion methods used: {sorted(set(rep.methods))}, worst disagreement {mpmath.nstr(rep.max_agreement, 3)}")

per = verify_periodicity(rid, precision=prec)
print(f"{per.parity}: |s(x+1) - s(x)| <= {mpmath.nstr(per.max_difference, 3)}")

exp = expand_identity(rid, 3, prec)
print("\nTaylor coefficients of s1 at x = 0:")
for i, (c, r) in enumerate(zip(exp.coefficients, exp.recognized)):
    print(f"  x^{i}: {mpmath.nstr(c, 25):>30s}  = {r}")
