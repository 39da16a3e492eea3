from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

import wzlab.summation as summation
from wzlab.catalog import default_catalog
from wzlab.errors import MethodDisagreement, NoConvergence, PochhammerSingularity
from wzlab.exact import BiPoly, PochFactor
from wzlab.jet import Jet
from wzlab.mpreal import const_ln2, const_pi, to_mpf
from wzlab.summation import (
    HyperSeriesSpec,
    TermStream,
    choose_method,
    harmonic_series_eval,
    sum_alternating,
    sum_direct,
    sum_extended,
    sum_series,
)
from oracle_values import HARMONICIDEN, SIDES

P = 256
WP = P + 64
CAT = default_catalog()
ALTERNATING_COMPANIONS = ["iden1", "iden2", "iden3", "iden4"]


def diff(a, b):
    with mpmath.workprec(WP):
        return abs(mpf(a) - mpf(b))


def pi():
    return const_pi(P)


@pytest.mark.parametrize("rid,closed", [("rama42", ("16", 1)), ("pi2-1", ("32", 2)), ("pi2-2", ("48", 2))])
def test_ramanujan_sums(rid, closed):
    res = CAT.identity(rid).lhs.evaluate(Fraction(0), P, mpf("1e-45"))
    with mpmath.workprec(WP):
        target = mpf(closed[0]) / pi() ** closed[1]
    assert diff(res.value, target) < mpf("1e-40")
    assert res.method == "direct" and res.terms_used <= 2000


@pytest.mark.parametrize("rid", ["iden2", "ejem", "iden3", "iden1", "iden4"])
def test_extended_series_at_zero(rid):
    v = sum_extended(CAT.identity(rid), Fraction(0), P).value
    with mpmath.workprec(WP):
        assert diff(v, 1 / pi()) < mpf("1e-70")


@pytest.mark.parametrize("x", sorted(SIDES))
@pytest.mark.parametrize("rid", sorted(SIDES["1/10"]))
def test_sides_against_reference(rid, x):
    rec = CAT.identity(rid)
    lhs_ref, comp_ref, _ = SIDES[x][rid]
    xq = Fraction(x)
    assert diff(rec.lhs.evaluate(xq, P).value, lhs_ref) < mpf("1e-45")
    assert diff(rec.companion.evaluate(xq, P).value, comp_ref) < mpf("1e-35")


def test_tail_bound_is_sound():
    spec = CAT.identity("rama42").lhs.series
    res = sum_direct(spec, Fraction(0), P, mpf("1e-50"))
    stream = TermStream(spec, Fraction(0))
    with mpmath.workprec(WP):
        longer = mpmath.fsum(stream.signed(n) for n in range(2 * res.terms_used))
        assert abs(longer - res.value) <= res.tail_bound


@pytest.mark.parametrize("rid", ["iden1", "iden2", "idenpi2-quartic", "idenpi2-cubic"])
def test_index_shift(rid):
    # lhs(x+1) = lhs(x) - g(x) for the non-alternating extended series
    lhs = CAT.identity(rid).lhs
    x = Fraction(1, 10)
    a = lhs.evaluate(x + 1, P).value
    b = lhs.evaluate(x, P).value
    with mpmath.workprec(WP):
        g0 = lhs.prefactor.evaluate(x, P) * TermStream(lhs.series, x).signed(0)
        assert abs(a - (b - g0)) < mpf("1e-70")


@pytest.mark.parametrize("x", ["-1/4", "0", "1/10", "1/4", "2/5"])
@pytest.mark.parametrize("rid", ALTERNATING_COMPANIONS)
def test_euler_and_cvz_agree(rid, x):
    spec = CAT.identity(rid).companion.series
    eps = mpf(2) ** -P
    res = sum_alternating(spec, Fraction(x), P, eps)
    if res.method == "finite":          # (1/2 + 2x)_n terminates at x = -1/4
        assert rid == "iden3" and x == "-1/4"
        return
    assert res.method == "cvz"
    assert res.agreement <= 2 ** 16 * eps
    assert diff(res.alternatives["euler"], res.value) == res.agreement


@pytest.mark.parametrize("rid", ["iden2", "idenpi2-cubic", "iden4"])
def test_jet_constant_term_matches_scalar(rid):
    rec = CAT.identity(rid)
    with mpmath.workprec(WP):
        jet = rec.lhs.evaluate(Jet.variable(Fraction(0), 3), P).value
    scalar = rec.lhs.evaluate(Fraction(0), P).value
    assert diff(jet[0], scalar) < mpf(2) ** -200


def test_grandi_abel_value():
    spec = HyperSeriesSpec(base=Fraction(1), alternating=True)
    assert diff(sum_series(spec, Fraction(0), P).value, mpf(1) / 2) < mpf("1e-70")


def test_divergent_binomial_abel_value():
    # sum (-1)^n (19/10)_n / n! is 2^(-19/10) by analytic continuation
    spec = HyperSeriesSpec(base=Fraction(1), alternating=True,
                           factors=(PochFactor(Fraction(19, 10), 1, "num"), PochFactor(Fraction(1), 1, "den")))
    v = sum_series(spec, Fraction(0), P).value
    with mpmath.workprec(WP):
        assert diff(v, mpf(2) ** (-mpf(19) / 10)) < mpf("1e-70")


def test_identity_one_companion_at_half():
    spec = CAT.identity("iden1").companion.series
    assert diff(sum_series(spec, Fraction(1, 2), P).value, mpf(1) / 2) < mpf("1e-70")


def test_identity_four_companion_at_half():
    spec = CAT.identity("iden4").companion.series
    with mpmath.workprec(WP):
        assert diff(sum_series(spec, Fraction(1, 2), P).value, 1 / pi()) < mpf("1e-70")


def test_method_choice():
    assert choose_method(CAT.identity("rama42").lhs.series) == "direct"
    assert choose_method(CAT.identity("iden2").companion.series) == "cvz"
    assert choose_method(CAT.identity("idenpi2-cubic").companion.series) == "zeta"


def test_terminating_series():
    spec = HyperSeriesSpec(base=Fraction(1, 2), factors=(PochFactor(Fraction(-3), 1, "num"),))
    res = sum_series(spec, Fraction(0), P)
    assert res.method == "finite" and res.terms_used == 4
    assert res.value == mpf(1) / 4


def test_denominator_pole_raises():
    spec = HyperSeriesSpec(base=Fraction(1, 2), factors=(PochFactor(Fraction(-3), 1, "den"),))
    with pytest.raises(PochhammerSingularity):
        sum_series(spec, Fraction(0), P)


def test_divergence_detected():
    with pytest.raises(NoConvergence):
        sum_direct(HyperSeriesSpec(base=Fraction(2)), Fraction(0), P)
    spec = HyperSeriesSpec(base=Fraction(1), alternating=True, factors=(PochFactor(Fraction(1), 1, "num"),))
    with pytest.raises(NoConvergence):
        sum_series(spec, Fraction(0), P)


def test_disagreement_is_reported(monkeypatch):
    monkeypatch.setattr(summation, "DISAGREEMENT_FACTOR", mpf(2) ** -400)
    with pytest.raises(MethodDisagreement):
        sum_alternating(CAT.identity("iden2").companion.series, Fraction(1, 10), P)


def test_weight_degree_limit():
    with pytest.raises(ValueError):
        HyperSeriesSpec(base=Fraction(1, 2), weight=BiPoly.n() ** 3)


def test_harmonic_variants():
    with mpmath.workprec(WP):
        ln2, p = const_ln2(P), pi()
        assert diff(harmonic_series_eval("harmoniciden", 0, P), -12 * ln2 / p) < mpf("1e-30")
        assert diff(harmonic_series_eval("harmoniciden", 0, P), HARMONICIDEN) < mpf("1e-45")
        assert diff(harmonic_series_eval("forchu", Fraction(0), P), 1 / p) < mpf("1e-30")
        assert abs(harmonic_series_eval("forchu", Fraction(1, 2), P)) < mpf("1e-30")
    with pytest.raises(KeyError):
        harmonic_series_eval("nosuch")


def test_jet_sum_slope_matches_difference():
    # first jet coefficient of the I2 lhs vs a central difference
    lhs = CAT.identity("iden2").lhs
    h = Fraction(1, 2 ** 40)
    with mpmath.workprec(WP):
        jet = lhs.evaluate(Jet.variable(Fraction(1, 10), 1), P).value
    fd_hi = lhs.evaluate(Fraction(1, 10) + h, P).value
    fd_lo = lhs.evaluate(Fraction(1, 10) - h, P).value
    with mpmath.workprec(WP):
        fd = (fd_hi - fd_lo) / (2 * to_mpf(h))
        assert abs(jet[1] - fd) <= abs(fd) * mpf(2) ** -60
