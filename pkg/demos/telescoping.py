"""Exact WZ telescoping, then the same check on a deliberately broken pair.

F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k) is verified cell by cell in rational
arithmetic, so a pass means an exact zero on every cell of the grid.
"""
import dataclasses
from fractions import Fraction

from wzlab.catalog import default_catalog
from wzlab.exact import certificate_check, wz_check_grid, wz_eval

cat = default_catalog()

for rid in ("iden1", "iden2", "iden3", "iden4", "idenpi2-cubic"):
    pair = cat.identity(rid).wz_pair
    grid = wz_check_grid(pair, 25, 25)
    cert = certificate_check(pair, 25, 25)
    print(f"{rid:14s} cells={grid.cells}  nonzero={len(grid.nonzero)}  poles={len(grid.poles)}  "
          f"certificate={'ok' if cert.passed else 'BAD'}")

pair = cat.identity("iden2").wz_pair
print("\nA few exact values of F and G for iden2:")
for n in range(3):
    print("  ", [str(wz_eval(pair, "F", n, k)) for k in range(3)],
          [str(wz_eval(pair, "G", n, k)) for k in range(3)])

bad = dataclasses.replace(pair, base=Fraction(-1, 63))
grid = wz_check_grid(bad, 25, 25)
print(f"\nwith base -1/63 instead of {pair.base}: passed={grid.passed}, first failure at {grid.first_failure}")
