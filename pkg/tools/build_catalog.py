"""Regenerate src/wzlab/data/catalog.json from the definitions below.

    python3 tools/build_catalog.py
"""
from __future__ import annotations

import json
from fractions import Fraction as Q
from pathlib import Path

from wzlab.catalog import (
    Catalog,
    ExpansionTerm,
    FamilyRecord,
    IdentityRecord,
    LemmaRecord,
    catalog_from_dict,
    catalog_to_json,
)
from wzlab.exact import BiPoly, BiRat, PochFactor, WZPairSpec
from wzlab.mpreal import TrigRationalModel
from wzlab.summation import HyperSeriesSpec, Prefactor, ScaledSeries

OUT = Path(__file__).resolve().parents[1] / "src" / "wzlab" / "data" / "catalog.json"

h = Q(1, 2)
n = BiPoly.n()
p = BiPoly.p()      # x for identity series, k for WZ pairs and families
m = n + p           # the shifted index n + x
ONE = BiPoly.const(1)


def num(c, e=1, k=0, x=0):
    return PochFactor(Q(c), e, "num", Q(k), Q(x))


def den(c, e=1, k=0, x=0):
    return PochFactor(Q(c), e, "den", Q(k), Q(x))


def shifted(gammas):
    """(c)_{n+x}^e = (c)_x^e (c+x)_n^e: the x-shifted Pochhammer factors."""
    return tuple(num(c, e, x=1) if e > 0 else den(c, -e, x=1) for c, e in gammas)


def tm(numer, denom=(1,), pi=1):
    return TrigRationalModel(tuple(Q(c) for c in numer), tuple(Q(c) for c in denom), pi)


def poly(*coeffs):
    return tuple(Q(c) for c in coeffs)


def expansion(*terms):
    return tuple(ExpansionTerm(o, Q(c), t) for o, c, t in terms)


G3 = ((h, 3), (1, -3))
G_PI2_1 = ((h, 3), (Q(1, 4), 1), (Q(3, 4), 1), (1, -5))
G_PI2_2 = ((h, 3), (Q(1, 3), 1), (Q(2, 3), 1), (1, -5))
G_I3 = ((h, 1), (Q(1, 4), 1), (Q(3, 4), 1), (1, -3))


def lhs(const, base, gammas, weight, alternating=False, const_sqrt=1):
    return ScaledSeries(
        Prefactor(Q(const), Q(const_sqrt), Q(base), gammas),
        HyperSeriesSpec(Q(base), alternating, shifted(gammas), weight),
    )


def ratio_sq(power):
    """[(1/2 + x)_n / (3/2 - x)_n]^power."""
    return (num(h, power, x=1), den(Q(3, 2), power, x=-1))


def identities():
    recs = []

    recs.append(IdentityRecord(
        id="ejem", aliases=("E0",), kind="identity",
        description="alternating z=1/8 example with t(x) = 1/(pi cos pi x)",
        lhs=lhs(Q(1, 4), Q(1, 8), G3, 6 * m + 1, alternating=True, const_sqrt=2),
        companion=ScaledSeries(
            Prefactor(Q(4), Q(2), Q(1, 8), G3, poly(0, 0, 1), poly(-1, 2)),
            HyperSeriesSpec(h, False, (num(h, 2, x=1), den(1, 1, x=1), den(Q(3, 2), 1, x=-1))),
        ),
        t_model=tm([1], [0, 1]), parity="antiperiodic",
        expected_expansion=expansion((0, 1, "1/pi"), (1, 0, "1")),
        wz_pair=None, check_mode="numeric-only",
    ))

    recs.append(IdentityRecord(
        id="old", aliases=("eq9",), kind="identity",
        description="z=1/64 identity with an x^2 companion and t(x) = 1/(pi cos^2 pi x)",
        lhs=lhs(Q(1, 16), Q(1, 64), G3, 42 * m + 5),
        companion=ScaledSeries(
            Prefactor(Q(1), Q(1), Q(1, 64), G3, poly(0, 0, 8), poly(-1, 2)),
            HyperSeriesSpec(Q(1), False, (num(h, 2, x=1), den(1, 1, x=2), den(Q(3, 2), 1, x=-1))),
        ),
        t_model=tm([1], [0, 0, 1]), parity="periodic",
        expected_expansion=expansion((0, 1, "1/pi"), (1, 0, "1"), (2, -3, "pi")),
        wz_pair=None, check_mode="numeric-only",
    ))

    recs.append(IdentityRecord(
        id="iden1", aliases=("I1",), kind="identity",
        description="z=1/4 series, t(x) = cos(2 pi x)/(pi cos^2 pi x)",
        lhs=lhs(Q(1, 4), Q(1, 4), G3, 6 * m + 1),
        companion=ScaledSeries(
            Prefactor(Q(1), Q(1), Q(1, 4), G3, poly(0, 0, 0, 16), poly(1, -4, 4)),
            HyperSeriesSpec(Q(1), True, ratio_sq(2)),
        ),
        t_model=tm([-1, 0, 2], [0, 0, 1]), parity="periodic",
        expected_expansion=expansion((0, 1, "1/pi"), (1, 0, "1"), (2, -1, "pi"), (3, 16, "G")),
        wz_pair=WZPairSpec(
            kernel=(num(h, 2, k=-1), num(h, 2, k=1), den(1, 3), den(h, 1)),
            base=Q(1, 4), sign_n=False, sign_k=True,
            f_mult=BiRat(64 * n ** 3, (2 * n - 2 * p - 1) ** 2),
            g_mult=BiRat((2 * n + 1) * (6 * n + 1) - 4 * p ** 2, 2 * n + 1),
        ),
        check_mode="exact+numeric",
    ))

    recs.append(IdentityRecord(
        id="iden2", aliases=("I2", "new"), kind="identity",
        description="z=1/64 series, t(x) = cos(3 pi x)/(pi cos^3 pi x)",
        lhs=lhs(Q(1, 16), Q(1, 64), G3, 42 * m + 5),
        companion=ScaledSeries(
            Prefactor(Q(1), Q(1), Q(1, 64), G3, poly(0, 0, 0, 64), poly(1, -6, 12, -8)),
            HyperSeriesSpec(Q(1), True, ratio_sq(3), 2 * n + 1),
        ),
        t_model=tm([0, -3, 0, 4], [0, 0, 0, 1]), parity="periodic",
        expected_expansion=expansion((0, 1, "1/pi"), (1, 0, "1"), (2, -3, "pi"), (3, 64, "G")),
        wz_pair=WZPairSpec(
            kernel=(num(h, 3, k=-1), num(h, 3, k=1), den(1, 3), den(h, 3)),
            base=Q(1, 64), sign_n=False, sign_k=True,
            f_mult=BiRat(-64 * n ** 3 * (2 * p + 1), (2 * n - 2 * p - 1) ** 3),
            g_mult=BiRat((2 * n + 1) ** 3 * (42 * n + 5)
                         + p * (16 * p ** 3 - 96 * n ** 2 * p - 96 * p * n - 24 * p),
                         16 * (2 * n + 1) ** 3),
        ),
        check_mode="exact+numeric",
    ))

    recs.append(IdentityRecord(
        id="iden3", aliases=("I3",), kind="identity",
        description="alternating z=1/4 series with (1/2)(1/4)(3/4), t(x) = cos(2 pi x)/(pi cos pi x)",
        lhs=lhs(Q(1, 8), Q(1, 4), G_I3, 20 * m + 3, alternating=True),
        companion=ScaledSeries(
            Prefactor(Q(1), Q(1), Q(1, 4), G_I3, poly(0, 0, 0, 32), poly(1, -2)),
            HyperSeriesSpec(Q(1), True,
                            (num(h, 1, x=2), num(h, 2, x=1), den(Q(3, 2), 1, x=-1), den(h, 2)),
                            extra_weight=BiRat(2 * n + 1 + p, (2 * n + 1) ** 2)),
        ),
        t_model=tm([-1, 0, 2], [0, 1]), parity="antiperiodic",
        expected_expansion=expansion((0, 1, "1/pi"), (1, 0, "1"), (2, Q(-3, 2), "pi"), (3, 32, "G")),
        wz_pair=WZPairSpec(
            kernel=(num(h, 1, k=-1), num(h, 2, k=1), num(Q(1, 4), 1, k=h), num(Q(3, 4), 1, k=h),
                    den(1, 3), den(h, 2)),
            base=Q(1, 4), sign_n=True, sign_k=True,
            f_mult=BiRat(-32 * n ** 3 * (n + 2 * p + 1), (2 * n - 2 * p - 1) * (2 * p + 1) ** 2),
            g_mult=BiRat((2 * n + 1) ** 2 * (20 * n + 3)
                         - p * (8 * n ** 2 + 32 * n * p + 8 * p ** 2 + 12 * p - 2),
                         8 * (2 * n + 1) ** 2),
        ),
        check_mode="exact+numeric",
    ))

    recs.append(IdentityRecord(
        id="iden4", aliases=("I4",), kind="identity",
        description="alternating z=1 series, t(x) = cos(2 pi x)/(pi cos^3 pi x)",
        lhs=lhs(h, Q(1), G3, 4 * m + 1, alternating=True),
        companion=ScaledSeries(
            Prefactor(Q(1), Q(1), Q(1), G3, poly(0, 0, 0, 8), poly(1, -6, 12, -8)),
            HyperSeriesSpec(Q(1), True, (num(h, 3), den(Q(3, 2), 3, x=-1)), 2 * n + 1 - p),
        ),
        t_model=tm([-1, 0, 2], [0, 0, 0, 1]), parity="antiperiodic",
        expected_expansion=expansion((0, 1, "1/pi"), (1, 0, "1"), (2, Q(-1, 2), "pi"), (3, 8, "G")),
        wz_pair=WZPairSpec(
            kernel=(num(h, 3, k=-1), den(1, 3)),
            base=Q(1), sign_n=True, sign_k=True,
            f_mult=BiRat(16 * n ** 3 * (n - 2 * p - 1), (2 * n - 2 * p - 1) ** 3),
            g_mult=BiRat(4 * n - 2 * p + 1, ONE),
        ),
        check_mode="exact+numeric",
    ))

    recs.append(IdentityRecord(
        id="idenpi2-quartic", aliases=("P1",), kind="identity",
        description="z=1/16 series for 32/pi^2 with an x^5 companion",
        lhs=lhs(Q(1, 32), Q(1, 16), G_PI2_1, 120 * m * m + 34 * m + 3),
        companion=ScaledSeries(
            Prefactor(Q(-1), Q(1), Q(1, 16), G_PI2_1, poly(0, 0, 0, 0, 0, 256), poly(1, -8, 24, -32, 16)),
            HyperSeriesSpec(Q(1), False, ratio_sq(4), 2 * n + 1),
        ),
        t_model=tm([5, 0, -12, 0, 8], [0, 0, -1, 0, 2], pi=2), parity="periodic",
        expected_expansion=expansion((0, 1, "1/pi^2"), (1, 0, "1"), (2, -1, "1"), (3, 0, "1"),
                                     (4, Q(10, 3), "pi^2"), (5, -224, "zeta3")),
        wz_pair=WZPairSpec(
            kernel=(num(h, 4, k=-1), num(h, 4, k=1), num(Q(1, 4)), num(Q(3, 4)), den(1, 5), den(h, 5)),
            base=Q(1, 16), sign_n=False, sign_k=False,
            f_mult=BiRat(-(n ** 5) * (2 * p + 1), (1 + 2 * p - 2 * n) ** 4),
            g_mult=None,
        ),
        check_mode="numeric-only",
    ))

    p2_g = BiRat((74 * n ** 2 + 27 * n + 3) * (2 * n + 1) ** 3 + 48 * p ** 4 * (3 * n + 1)
                 - 24 * p ** 2 * (5 * n + 1) * (2 * n + 1) ** 2,
                 (2 * n + 1) ** 3)
    recs.append(IdentityRecord(
        id="idenpi2-cubic", aliases=("P2",), kind="identity",
        description="z=27/64 series for 48/pi^2 with an x^5 companion",
        lhs=lhs(Q(1, 48), Q(27, 64), G_PI2_2, 74 * m * m + 27 * m + 3),
        companion=ScaledSeries(
            Prefactor(Q(1), Q(1), Q(27, 64), G_PI2_2, poly(0, 0, 0, 0, 0, 128), poly(-3, 18, -36, 24)),
            HyperSeriesSpec(Q(1), False, ratio_sq(3)),
        ),
        t_model=tm([3, 0, -8, 0, 8], [0, 0, -1, 0, 4], pi=2), parity="periodic",
        expected_expansion=expansion((0, 1, "1/pi^2"), (1, 0, "1"), (2, Q(-1, 3), "1"), (3, 0, "1"),
                                     (4, Q(2, 3), "pi^2"), (5, Q(-112, 3), "zeta3")),
        wz_pair=WZPairSpec(
            kernel=(num(h, 3, k=-1), num(h, 3, k=1), num(Q(1, 3)), num(Q(2, 3)), den(1, 5), den(h, 3)),
            base=Q(27, 64), sign_n=False, sign_k=False,
            f_mult=BiRat(2 ** 11 * n ** 5, (2 * n - 2 * p - 1) ** 3),
            g_mult=p2_g,
        ),
        check_mode="exact+numeric",
    ))

    for rid, alias, base, gammas, weight, value, pi in (
        ("rama42", "R-42", Q(1, 64), G3, 42 * n + 5, 16, 1),
        ("pi2-1", "R-pi2-1", Q(1, 16), G_PI2_1, 120 * n ** 2 + 34 * n + 3, 32, 2),
        ("pi2-2", "R-pi2-2", Q(27, 64), G_PI2_2, 74 * n ** 2 + 27 * n + 3, 48, 2),
    ):
        factors = tuple(num(c, e) if e > 0 else den(c, -e) for c, e in gammas)
        recs.append(IdentityRecord(
            id=rid, aliases=(alias,), kind="ramanujan",
            description=f"Ramanujan-type series with sum {value}/pi^{pi}",
            lhs=ScaledSeries(Prefactor(), HyperSeriesSpec(base, False, factors, weight)),
            companion=None,
            t_model=tm([value], [1], pi), parity=None,
            expected_expansion=expansion((0, value, "1/pi" if pi == 1 else "1/pi^2")),
            wz_pair=None, check_mode="numeric-only",
        ))
    return recs


def lemmas():
    i3_series = HyperSeriesSpec(Q(1), True,
                                (num(h, 1, x=2), num(h, 2, x=1), den(Q(3, 2), 1, x=-1), den(h, 2)),
                                extra_weight=BiRat(2 * n + 1 + p, (2 * n + 1) ** 2))
    i4_series = HyperSeriesSpec(Q(1), True, (num(h, 3), den(Q(3, 2), 3, x=-1)), 2 * n + 1 - p)
    unit = Prefactor()
    return [
        LemmaRecord(
            id="lemma1", aliases=("L1", "asymp1"), kind="lemma",
            description="sum (-1)^n [(1/2+x)_n/(3/2-x)_n]^2 near x = 1/2",
            series=ScaledSeries(unit, HyperSeriesSpec(Q(1), True, ratio_sq(2))),
            center=h, variable="u",
            expected_jet=((( Q(1, 2), "1"),), ((Q(-1), "ln2"),)),
        ),
        LemmaRecord(
            id="lemma2", aliases=("L2", "asymp2"), kind="lemma",
            description="sum (-1)^n [(1/2+x)_n/(3/2-x)_n]^3 (2n+1) near x = 1/2",
            series=ScaledSeries(unit, HyperSeriesSpec(Q(1), True, ratio_sq(3), 2 * n + 1)),
            center=h, variable="u",
            expected_jet=(((Q(0), "1"),), ((Q(-3, 2), "1"),), ((Q(0), "1"),)),
        ),
        LemmaRecord(
            id="lemma3", aliases=("L3",), kind="lemma",
            description="companion series of iden3 near x = 1/2",
            series=ScaledSeries(unit, i3_series),
            center=h, variable="u",
            expected_jet=(((Q(1, 2), "1"),), ((Q(-1), "1"),)),
        ),
        LemmaRecord(
            id="lemafinal", aliases=("L4",), kind="lemma",
            description="companion series of iden4 near x = 1/2",
            series=ScaledSeries(unit, i4_series),
            center=h, variable="u",
            expected_jet=(((Q(1), "1/pi"),), ((Q(-3), "ln2/pi"),)),
        ),
        LemmaRecord(
            id="forchu", aliases=(), kind="auxiliary",
            description="(1/2) sum (-1)^n (1/2+x)_n^3/(1)_n^3 (1+2x+4n) = cos(pi x)/pi",
            series=ScaledSeries(Prefactor(h), HyperSeriesSpec(Q(1), True, (num(h, 3, x=1), den(1, 3)),
                                                              1 + 2 * p + 4 * n)),
            center=Q(0), variable="x",
            expected_jet=(((Q(1), "1/pi"),),),
            t_model=tm([0, 1], [1], 1),
            sample_xs=(Q(0), Q(1, 10), Q(1, 3)),
        ),
        LemmaRecord(
            id="forGuthesis", aliases=(), kind="auxiliary",
            description="(1/2) sum (-1)^n (1/2+x)_n^3/(1+x)_n^3 (1+4x+4n), divided by (1)_x^3/(1/2)_x^3",
            series=ScaledSeries(Prefactor(h, gammas=((Q(1), -3), (h, 3))),
                                HyperSeriesSpec(Q(1), True, (num(h, 3, x=1), den(1, 3, x=1)),
                                                1 + 4 * p + 4 * n)),
            center=Q(0), variable="x",
            expected_jet=(((Q(1), "1/pi"),), ((Q(0), "1"),), ((Q(-1, 2), "pi"),)),
        ),
        LemmaRecord(
            id="harmoniciden", aliases=(), kind="auxiliary",
            description="sum (-1)^n (1/2)_n^3/(1)_n^3 [-2 + 3(4n+1) H_n] = -12 ln2/pi",
            series=ScaledSeries(unit, HyperSeriesSpec(Q(1), True, (num(h, 3), den(1, 3)),
                                                      BiPoly.const(-2), harmonic_weight=3 * (4 * n + 1))),
            center=Q(0), variable="x",
            expected_jet=(((Q(-12), "ln2/pi"),),),
        ),
    ]


def families():
    k = p
    cosk = HyperSeriesSpec(
        Q(27, 64), False,
        (num(h, 3, k=-1), num(h, 3, k=1), num(Q(1, 3)), num(Q(2, 3)), den(1, 5), den(h, 3)),
        ONE,
        extra_weight=BiRat((74 * n ** 2 + 27 * n + 3) * (2 * n + 1) ** 3 + 48 * k ** 4 * (3 * n + 1)
                           - 24 * k ** 2 * (5 * n + 1) * (2 * n + 1) ** 2,
                           (2 * n + 1) ** 3),
        param="k",
    )
    kshift = HyperSeriesSpec(
        Q(27, 64), False,
        (num(h, 3), num(Q(1, 3), 1, k=Q(1, 3)), num(Q(2, 3), 1, k=Q(1, 3)), num(1, 1, k=Q(1, 3)),
         den(1, 3), den(1, 3, k=1)),
        ONE,
        extra_weight=BiRat(3 * (n * (74 * n ** 2 + 27 * n + 3)
                                + k * (108 * n ** 2 + 42 * n * k + 24 * n + 5 * k + 1)),
                           3 * n + k),
        param="k",
    )
    return [
        FamilyRecord(
            id="coskfamily", aliases=("cosk",),
            description="(1/48) sum_n G(n,k) of the cubic pair, expected cos^2(pi k)/pi^2",
            series=ScaledSeries(Prefactor(Q(1, 48)), cosk),
            expected=tm([0, 0, 1], [1], 2), k_domain="abs_le_half",
        ),
        FamilyRecord(
            id="kshift48", aliases=("k48",),
            description="k-shifted series with the 384 n^3/(3n+k) certificate, expected 48/pi^2",
            series=ScaledSeries(Prefactor(gammas=((h, 2), (Q(1), -2))), kshift),
            expected=tm([48], [1], 2), k_domain="nonneg_int",
        ),
    ]


def build() -> dict:
    cat = Catalog()
    for r in identities():
        cat.identities[r.id] = r
    for r in lemmas():
        cat.lemmas[r.id] = r
    for r in families():
        cat.families[r.id] = r
    data = catalog_to_json(cat)
    catalog_from_dict(data, "generated")   # validates schema and invariants
    return data


def main():
    data = build()
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {OUT} ({len(data['identities'])} identities, {len(data['lemmas'])} lemmas, "
          f"{len(data['families'])} families)")


if __name__ == "__main__":
    main()
