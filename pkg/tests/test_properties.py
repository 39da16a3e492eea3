from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpf

from wzlab.analysis import recognize_constant
from wzlab.catalog import default_catalog
from wzlab.errors import NoMatch
from wzlab.exact import poch_exact
from wzlab.jet import Jet, trig_t_jet
from wzlab.mpreal import CONSTANT_TAGS, cospi, polygamma, tag_value, to_mpf, trig_t_eval
from wzlab.summation import TermStream

P = 256
WP = P + 64
CAT = default_catalog()
SERIES_IDS = ["rama42", "pi2-1", "ejem", "old", "iden1", "iden2", "iden3", "iden4",
              "idenpi2-quartic", "idenpi2-cubic"]
MODEL_IDS = ["ejem", "old", "iden1", "iden2", "iden3", "iden4", "idenpi2-quartic", "idenpi2-cubic"]

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=12)
positive = st.fractions(min_value=Fraction(1, 20), max_value=40, max_denominator=50)
small_x = st.fractions(min_value=Fraction(-1, 5), max_value=Fraction(1, 5), max_denominator=40)


@settings(max_examples=200, deadline=None)
@given(rationals, st.integers(0, 30), st.integers(0, 30))
def test_pochhammer_functional_equation(c, m, n):
    assert poch_exact(c, m + n) == poch_exact(c, m) * poch_exact(c + m, n)


@settings(max_examples=40, deadline=None)
@given(positive, st.integers(0, 3))
def test_polygamma_recurrence(a, m):
    # psi^(m)(a+1) = psi^(m)(a) + (-1)^m m! / a^(m+1)
    lo, hi = polygamma(m, a, P), polygamma(m, a + 1, P)
    with mpmath.workprec(WP):
        step = (-1) ** m * mpmath.factorial(m) / to_mpf(a) ** (m + 1)
        assert abs(hi - lo - step) <= mpf(2) ** (24 - P) * max(1, abs(hi))


@settings(max_examples=20, deadline=None)
@given(positive, st.integers(0, 2))
def test_polygamma_escalation(a, m):
    lo, hi = polygamma(m, a, P), polygamma(m, a, P + 64)
    with mpmath.workprec(WP + 64):
        assert abs(lo - hi) <= mpf(2) ** (16 - P) * max(1, abs(hi))


@pytest.mark.parametrize("tag", CONSTANT_TAGS)
def test_constant_escalation(tag):
    lo, hi = tag_value(tag, P), tag_value(tag, P + 64)
    with mpmath.workprec(WP + 64):
        assert abs(lo - hi) <= mpf(2) ** (16 - P) * max(1, abs(hi))


def _fd_check(jet_slope, f_hi, f_lo, h):
    with mpmath.workprec(WP):
        fd = (f_hi - f_lo) / (2 * to_mpf(h))
        assert abs(jet_slope - fd) <= max(abs(fd), mpf(2) ** -100) * mpf(2) ** -60


H = Fraction(1, 2 ** 40)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SERIES_IDS), st.integers(0, 40))
def test_series_term_jet_vs_difference(rid, n):
    spec = CAT.identity(rid).lhs.series
    with mpmath.workprec(WP):
        slope = TermStream(spec, Jet.variable(Fraction(0), 1)).signed(n)[1]
        hi = TermStream(spec, H).signed(n)
        lo = TermStream(spec, -H).signed(n)
    _fd_check(slope, hi, lo, H)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(MODEL_IDS), small_x)
def test_t_model_jet_vs_difference(rid, x0):
    model = CAT.identity(rid).t_model
    slope = trig_t_jet(model, x0, 1, P)[1]
    _fd_check(slope, trig_t_eval(model, x0 + H, P), trig_t_eval(model, x0 - H, P), H)


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=60), st.integers(-4, 4))
def test_cospi_periodicity(x, shift):
    a, b = cospi(x, P), cospi(x + 2 * shift, P)
    with mpmath.workprec(WP):
        assert abs(a - b) <= mpf(2) ** (8 - P)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([t for t in CONSTANT_TAGS if t != "1"]),
       st.fractions(min_value=-300, max_value=300, max_denominator=30).filter(lambda q: q != 0),
       st.floats(min_value=-1, max_value=1))
def test_recognize_stable(tag, coeff, wobble):
    with mpmath.workprec(WP):
        v = to_mpf(coeff) * tag_value(tag, P) + mpf(wobble) * mpf(2) ** -(P // 2 + 4)
    hit = recognize_constant(v, precision=P // 2)
    assert hit.tag == tag and hit.coeff == coeff


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([t for t in CONSTANT_TAGS if t != "1"]),
       st.fractions(min_value=-300, max_value=300, max_denominator=30).filter(lambda q: q != 0),
       st.integers(-60, -20))
def test_perturbed_constant_is_rejected(tag, coeff, e):
    with mpmath.workprec(WP):
        # irrational factor: a rational relative shift would just be another coefficient
        v = to_mpf(coeff) * tag_value(tag, P) * (1 + mpf(2) ** e * mpmath.sqrt(2))
    with pytest.raises(NoMatch):
        recognize_constant(v, precision=P)
