"""Three classic 1/pi and 1/pi^2 series, summed at rising precision.

Each series gains a fixed number of digits per term, so the term count
grows linearly with the precision while the error tracks the target.
"""
from fractions import Fraction

import mpmath

from wzlab.catalog import default_catalog
from wzlab.mpreal import tag_value

cat = default_catalog()
targets = {"rama42": (16, "1/pi"), "pi2-1": (32, "1/pi^2"), "pi2-2": (48, "1/pi^2")}

for rid, (q, tag) in targets.items():
    series = cat.identity(rid).lhs
    print(f"{rid}: sum should equal {tag.replace('1/', f'{q}/')}")
    for prec in (64, 128, 256, 512):
        res = series.evaluate(Fraction(0), prec)
        with mpmath.workprec(prec + 64):
            gap = abs(res.value - q * tag_value(tag, prec))
        print(f"  {prec:4d} bits  {res.terms_used:4d} terms  |error| = {mpmath.nstr(gap, 3)}")
    print()

# digits per term, straight from the geometric ratio of each base
for rid in targets:
    base = cat.identity(rid).lhs.series.base
    with mpmath.workdps(20):
        print(f"{rid}: ~{mpmath.nstr(-mpmath.log10(abs(mpmath.mpf(base.numerator) / base.denominator)), 4)} digits/term")
