"""Independent reference values for the test-suite.

Everything here uses mpmath's own special functions (nsum, hyper, rf, psi,
built-in constants) and never imports wzlab.  Run once and commit the output:

    python3 tools/oracles.py > tests/oracle_values.py
"""
from mpmath import catalan, cos, hyper, inf, log, mp, mpf, nsum, pi, psi, rf, sqrt, zeta

mp.dps = 60
DIGITS = 50
h = mpf(1) / 2


def s(v):
    return mp.nstr(v, DIGITS)


def pre(x, z, cs, ds):
    return z ** x * mp.fprod([rf(c, x) for c in cs]) / mp.fprod([rf(d, x) for d in ds])


def ext(x, z, cs, ds, w, alt=False):
    def term(n):
        sign = (-1) ** int(n) if alt else 1
        return sign * z ** (n + x) * mp.fprod([rf(c, n + x) for c in cs]) \
            / mp.fprod([rf(d, n + x) for d in ds]) * w(n + x)
    return nsum(term, [0, inf])


def alt_sum(f):
    return nsum(lambda n: (-1) ** int(n) * f(n), [0, inf])


def sides(x):
    """lhs(x) and companion(x) for each identity, sign conventions as stored."""
    a, b = h + x, mpf(3) / 2 - x
    out = {}
    out["ejem"] = (
        sqrt(2) / 4 * ext(x, mpf(1) / 8, [h] * 3, [1] * 3, lambda m: 6 * m + 1, True),
        4 * sqrt(2) * pre(x, mpf(1) / 8, [h] * 3, [1] * 3) * x ** 2 / (2 * x - 1)
        * nsum(lambda n: 2 ** -n * rf(a, n) ** 2 / (rf(x + 1, n) * rf(b, n)), [0, inf]),
    )
    out["old"] = (
        ext(x, mpf(1) / 64, [h] * 3, [1] * 3, lambda m: 42 * m + 5) / 16,
        pre(x, mpf(1) / 64, [h] * 3, [1] * 3) * 8 * x ** 2 / (2 * x - 1)
        * hyper([a, a, 1], [1 + 2 * x, b], 1),
    )
    out["iden1"] = (
        ext(x, mpf(1) / 4, [h] * 3, [1] * 3, lambda m: 6 * m + 1) / 4,
        pre(x, mpf(1) / 4, [h] * 3, [1] * 3) * 16 * x ** 3 / (1 - 2 * x) ** 2
        * alt_sum(lambda n: (rf(a, n) / rf(b, n)) ** 2),
    )
    out["iden2"] = (
        ext(x, mpf(1) / 64, [h] * 3, [1] * 3, lambda m: 42 * m + 5) / 16,
        pre(x, mpf(1) / 64, [h] * 3, [1] * 3) * 64 * x ** 3 / (1 - 2 * x) ** 3
        * alt_sum(lambda n: (rf(a, n) / rf(b, n)) ** 3 * (2 * n + 1)),
    )
    q = [h, mpf(1) / 4, mpf(3) / 4]
    out["iden3"] = (
        ext(x, mpf(1) / 4, q, [1] * 3, lambda m: 20 * m + 3, True) / 8,
        pre(x, mpf(1) / 4, q, [1] * 3) * 32 * x ** 3 / (1 - 2 * x)
        * alt_sum(lambda n: rf(h + 2 * x, n) * rf(a, n) ** 2 / (rf(b, n) * rf(h, n) ** 2)
                  * (2 * n + 1 + x) / (2 * n + 1) ** 2),
    )
    out["iden4"] = (
        ext(x, mpf(1), [h] * 3, [1] * 3, lambda m: 4 * m + 1, True) / 2,
        pre(x, 1, [h] * 3, [1] * 3) * 8 * x ** 3 / (1 - 2 * x) ** 3
        * alt_sum(lambda n: rf(h, n) ** 3 / rf(b, n) ** 3 * (2 * n + 1 - x)),
    )
    q = [h] * 3 + [mpf(1) / 4, mpf(3) / 4]
    out["idenpi2-quartic"] = (
        ext(x, mpf(1) / 16, q, [1] * 5, lambda m: 120 * m ** 2 + 34 * m + 3) / 32,
        -pre(x, mpf(1) / 16, q, [1] * 5) * 256 * x ** 5 / (1 - 2 * x) ** 4
        * hyper([a, a, a, a, mpf(3) / 2, 1], [b, b, b, b, h], 1),
    )
    q = [h] * 3 + [mpf(1) / 3, mpf(2) / 3]
    out["idenpi2-cubic"] = (
        ext(x, mpf(27) / 64, q, [1] * 5, lambda m: 74 * m ** 2 + 27 * m + 3) / 48,
        pre(x, mpf(27) / 64, q, [1] * 5) * 128 * x ** 5 / (3 * (2 * x - 1) ** 3)
        * hyper([a, a, a, 1], [b, b, b], 1),
    )
    return out


def t_closed(x):
    c = cos(pi * x)
    return {
        "ejem": 1 / (pi * c),
        "old": 1 / (pi * c ** 2),
        "iden1": cos(2 * pi * x) / (pi * c ** 2),
        "iden2": cos(3 * pi * x) / (pi * c ** 3),
        "iden3": cos(2 * pi * x) / (pi * c),
        "iden4": cos(2 * pi * x) / (pi * c ** 3),
        "idenpi2-quartic": (8 * c ** 4 - 12 * c ** 2 + 5) / (2 * c ** 4 - c ** 2) / pi ** 2,
        "idenpi2-cubic": (8 * c ** 4 - 8 * c ** 2 + 3) / (4 * c ** 4 - c ** 2) / pi ** 2,
    }


def main():
    print('"""Reference values from tools/oracles.py (mpmath built-ins only)."""')
    print()
    print("CONSTANTS = {")
    for name, v in (("pi", pi), ("G", catalan), ("zeta3", zeta(3)), ("ln2", log(2))):
        print(f"    {name!r}: {s(v)!r},")
    print("}")
    print()
    print("POLYGAMMA = {")
    for m, a in ((0, "1"), (1, "1/2"), (2, "1/3"), (3, "7/4"), (1, "123/10")):
        num, den = (a.split("/") + ["1"])[:2]
        v = psi(m, mpf(num) / mpf(den))
        print(f"    ({m}, {a!r}): {s(v)!r},")
    print("}")
    print()
    print("# x -> {id: (lhs, companion, t)}")
    print("SIDES = {")
    for xs in ("1/10", "-1/10"):
        num, den = xs.split("/")
        x = mpf(num) / mpf(den)
        sd, tt = sides(x), t_closed(x)
        print(f"    {xs!r}: {{")
        for k, (l, c) in sd.items():
            print(f"        {k!r}: ({s(l)!r}, {s(c)!r}, {s(tt[k])!r}),")
        print("    },")
    print("}")
    print()
    fg = alt_sum(lambda n: rf(h, n) ** 3 / rf(1, n) ** 3 * (-2 + 3 * (4 * n + 1) * mp.harmonic(n)))
    print(f"HARMONICIDEN = {s(fg)!r}")


if __name__ == "__main__":
    main()
