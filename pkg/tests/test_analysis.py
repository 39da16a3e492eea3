from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from wzlab.analysis import (
    Recognized,
    evaluate_parts,
    expand_identity,
    format_poly,
    guess_t,
    parse_poly,
    recognize_constant,
    residual_point,
    verify_identity,
    verify_lemma,
    verify_periodicity,
)
from wzlab.catalog import default_catalog
from wzlab.errors import NoMatch, RankDeficient, RationalizationFailed
from wzlab.exact import horner
from wzlab.jet import Jet
from wzlab.mpreal import const_catalan, const_pi, tag_value, to_mpf, trig_t_eval

P = 256
WP = P + 64
CAT = default_catalog()
Q5 = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)]


def test_iden2_residuals():
    rep = verify_identity("iden2", [Fraction(1, 10), Fraction(1, 4), Fraction(2, 5)], P)
    assert rep.passed and rep.max_residual < mpf("1e-30")
    assert rep.xs == sorted(rep.xs)
    assert set(rep.methods) == {"direct", "cvz"}


def test_residual_at_zero_is_ramanujan_head():
    pt = residual_point(CAT.identity("iden1"), Fraction(0), P)
    assert pt.companion == 0
    assert pt.residual < mpf("1e-30")


def test_points_sorted_regardless_of_input_order():
    rep = verify_identity("ejem", [Fraction(2, 5), Fraction(-1, 10), Fraction(1, 10)], P)
    assert rep.xs == [Fraction(-1, 10), Fraction(1, 10), Fraction(2, 5)]


def test_removable_singularity_uses_limit():
    pt = residual_point(CAT.identity("idenpi2-quartic"), Fraction(1, 4), P)
    assert pt.via_limit and pt.residual < mpf("1e-30")


def test_failing_tolerance_reports_failure():
    rep = verify_identity("iden1", [Fraction(1, 10)], P, tolerance=mpf("1e-200"))
    assert not rep.passed


def test_method_swap_invariance():
    rec = CAT.identity("iden2")
    x = Fraction(1, 10)
    eps = mpf(2) ** -(P + 8)
    comp = rec.companion.evaluate(x, P, eps)
    parts = evaluate_parts(rec, x, P)
    with mpmath.workprec(WP):
        r_cvz = parts.lhs - comp.value - parts.t
        r_euler = parts.lhs - comp.alternatives["euler"] - parts.t
        assert abs(r_cvz - r_euler) <= 2 ** 16 * eps


@pytest.mark.parametrize("rid", ["iden1", "ejem", "idenpi2-cubic"])
def test_periodicity(rid):
    rep = verify_periodicity(rid, [Fraction(1, 10)], P)
    assert rep.applicable and rep.passed


def test_periodicity_not_applicable_for_plain_sums():
    rep = verify_periodicity("rama42", [Fraction(1, 10)], P)
    assert not rep.applicable and rep.passed is None


@pytest.mark.parametrize("rid,expected", [
    ("iden2", [(1, "1/pi"), (0, "1"), (-3, "pi"), (64, "G")]),
    ("iden4", [(1, "1/pi"), (0, "1"), (Fraction(-1, 2), "pi"), (8, "G")]),
])
def test_expansion_heads(rid, expected):
    rep = expand_identity(rid, 3, P)
    assert rep.passed
    for c, (q, tag) in zip(rep.coefficients, expected):
        with mpmath.workprec(WP):
            assert abs(c - to_mpf(Fraction(q)) * tag_value(tag, P)) < mpf("1e-25")
    assert rep.escalation_bound < mpf("1e-60")
    assert rep.mechanism["order"] == 3 and rep.mechanism["difference"] < mpf("1e-25")


def test_cubic_expansion_to_fifth_order():
    rep = expand_identity("idenpi2-cubic", 5, P)
    assert rep.passed
    assert [str(r) for r in rep.recognized] == ["1/pi^2", "0", "-1/3", "0", "2/3*pi^2", "-112/3*zeta3"]


def test_expansion_order_bounds():
    with pytest.raises(ValueError):
        expand_identity("iden2", 7, P)


# |c6| exceeds 10^3 for these four (about 2320, 2320, 2480, 1540)
TAYLOR_BOUND = {"old": 10 ** 4, "iden2": 10 ** 4, "iden3": 10 ** 4, "idenpi2-quartic": 10 ** 4}


@pytest.mark.parametrize("rid", ["ejem", "old", "iden1", "iden2", "iden3", "iden4",
                                 "idenpi2-quartic", "idenpi2-cubic"])
def test_taylor_model_predicts_lhs(rid):
    rec = CAT.identity(rid)
    with mpmath.workprec(WP):
        jet = rec.lhs.evaluate(Jet.variable(Fraction(0), 5), P).value
    x = Fraction(1, 100)
    direct = rec.lhs.evaluate(x, P).value
    with mpmath.workprec(WP):
        model = horner(jet.coeffs, to_mpf(x))
        assert abs(model - direct) <= to_mpf(x) ** 6 * TAYLOR_BOUND.get(rid, 1000)


@pytest.mark.parametrize("lid,expected", [
    ("lemma1", ["1/2", "-ln2"]),
    ("lemma2", ["0", "-3/2", "0"]),
    ("lemma3", ["1/2", "-1"]),
])
def test_lemma_jets(lid, expected):
    rep = verify_lemma(lid, P)
    assert rep.passed and len(rep.coefficients) == len(expected)
    with mpmath.workprec(WP):
        for c, e in zip(rep.coefficients, expected):
            v = -tag_value("ln2", P) if e == "-ln2" else to_mpf(Fraction(e))
            assert abs(c - v) < mpf("1e-25")


def test_final_lemma_and_auxiliaries():
    for lid in ("lemafinal", "forchu", "forGuthesis", "harmoniciden"):
        assert verify_lemma(lid, P).passed, lid
    samples = verify_lemma("forchu", P).samples
    assert [s[0] for s in samples] == [0, Fraction(1, 10), Fraction(1, 3)]


def test_guess_cubic_numerator():
    res = guess_t("idenpi2-cubic", parse_poly("4c^4-c^2"), Q5, precision=P)
    assert res.model.numerator == (3, 0, -8, 0, 8)
    assert res.model.pi_power == 2
    assert any(res.extrapolated)          # q = 1/2 sits on a pole of t


def test_guess_quartic_numerator():
    res = guess_t("idenpi2-quartic", parse_poly("2c^4-c^2"), Q5, precision=P)
    assert res.model.numerator == (5, 0, -12, 0, 8)


def test_guess_identity_one():
    res = guess_t("iden1", parse_poly("c^2"), Q5[:3], precision=P)
    assert format_poly(res.model.numerator) == "2c^2-1"


def test_guess_idempotent_on_disjoint_samples():
    first = guess_t("idenpi2-cubic", parse_poly("4c^4-c^2"), Q5, precision=P)
    other = [Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(4, 5), Fraction(9, 10)]
    second = guess_t("idenpi2-cubic", first.model.denominator, other, precision=P)
    assert second.model.numerator == first.model.numerator


def test_guess_model_reproduces_identity():
    res = guess_t("idenpi2-cubic", parse_poly("4c^4-c^2"), Q5, precision=P)
    rec = CAT.identity("idenpi2-cubic")
    with mpmath.workprec(WP):
        diff = abs(trig_t_eval(res.model, Fraction(1, 7), P) - trig_t_eval(rec.t_model, Fraction(1, 7), P))
        assert diff < mpf("1e-70")


def test_guess_rank_deficient():
    with pytest.raises(RankDeficient):
        guess_t("idenpi2-cubic", parse_poly("4c^4-c^2"), Q5[:2], precision=P)
    with pytest.raises(RankDeficient):
        guess_t("idenpi2-cubic", parse_poly("4c^4-c^2"), [Fraction(1, 4)] * 4, precision=P)


def test_guess_wrong_denominator_fails():
    with pytest.raises(RationalizationFailed):
        guess_t("idenpi2-cubic", parse_poly("c^4"), Q5, precision=P)


def test_recognize_catalan_multiple():
    with mpmath.workprec(WP):
        v = 64 * const_catalan(P)
    assert recognize_constant(v, precision=P) == Recognized(Fraction(64), "G")


def test_recognize_zero_and_miss():
    assert recognize_constant(mpf(2) ** -250, precision=P) == Recognized(Fraction(0), "1")
    with mpmath.workprec(WP):
        off = const_pi(P) + mpf("1e-3")
    with pytest.raises(NoMatch):
        recognize_constant(off, precision=P)


def test_recognize_stable_under_small_perturbation():
    with mpmath.workprec(WP):
        base = -mpf(112) / 3 * tag_value("zeta3", P)
        for s in (1, -1):
            hit = recognize_constant(base + s * mpf(2) ** -(P // 2 + 8), precision=P // 2)
            assert hit.tag == "zeta3" and hit.coeff == Fraction(-112, 3)


def test_poly_text_roundtrip():
    for text in ("4c^4-c^2", "8c^4-8c^2+3", "-c+1/2", "c^3"):
        assert format_poly(parse_poly(text)) == text
    assert parse_poly("2*c**2 - 1") == (-1, 0, 2)
    with pytest.raises(ValueError):
        parse_poly("")
