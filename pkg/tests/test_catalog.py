import copy
import json
from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from wzlab import catalog as catalog_mod
from wzlab.catalog import (
    ENV_VAR,
    SCHEMA_VERSION,
    catalog_from_dict,
    catalog_to_json,
    default_catalog,
    default_path,
    family_eval,
    load_catalog,
)
from wzlab.errors import InvariantViolation, ParameterOutOfDomain, SchemaError, UnknownRecord
from wzlab.exact import wz_check_grid
from wzlab.mpreal import const_pi, tag_value, trig_t_eval

P = 256
CAT = default_catalog()
IDENTITIES = ["ejem", "old", "iden1", "iden2", "iden3", "iden4", "idenpi2-quartic", "idenpi2-cubic"]


def raw():
    return json.loads(default_path().read_text())


def test_shipped_counts():
    assert len(CAT.identity_ids()) == 11
    assert len(CAT.lemma_ids()) == 7
    assert set(CAT.families) == {"coskfamily", "kshift48"}
    assert raw()["schema"] == SCHEMA_VERSION


def test_aliases_resolve():
    assert CAT.identity("I2").id == "iden2"
    assert CAT.identity("P2").id == "idenpi2-cubic"
    assert CAT.lemma("L4").id == "lemafinal"
    assert CAT.kind_of("R-42") == "identity"
    assert CAT.kind_of("nosuch") is None


def test_unknown_record():
    with pytest.raises(UnknownRecord):
        CAT.identity("nosuch")
    with pytest.raises(UnknownRecord):
        CAT.series("nosuch")


@pytest.mark.parametrize("rid", IDENTITIES)
def test_parity_flags(rid):
    want = "antiperiodic" if rid in ("ejem", "iden3", "iden4") else "periodic"
    assert CAT.identity(rid).parity == want


@pytest.mark.parametrize("rid", CAT.identity_ids())
def test_lhs_at_zero_is_t_at_zero(rid):
    rec = CAT.identity(rid)
    v = rec.lhs.evaluate(Fraction(0), P).value
    t = trig_t_eval(rec.t_model, Fraction(0), P)
    with mpmath.workprec(P + 64):
        assert abs(v - t) < mpf("1e-60")


@pytest.mark.parametrize("rid", [r for r in CAT.identity_ids()
                                 if CAT.identity(r).check_mode == "exact+numeric"])
def test_exact_records_telescope(rid):
    assert wz_check_grid(CAT.identity(rid).wz_pair, 25, 25).passed


def test_order_zero_tags():
    for rid in IDENTITIES:
        e0 = [e for e in CAT.identity(rid).expected_expansion if e.order == 0][0]
        assert e0.tag in ("1/pi", "1/pi^2") and e0.coeff == 1


def test_companion_orders():
    orders = {rid: CAT.identity(rid).companion_order for rid in IDENTITIES}
    assert orders["old"] == 2 and orders["ejem"] == 2
    assert all(orders[r] == 3 for r in ("iden1", "iden2", "iden3", "iden4"))
    assert orders["idenpi2-quartic"] == orders["idenpi2-cubic"] == 5


def test_json_roundtrip():
    again = catalog_from_dict(catalog_to_json(CAT))
    assert catalog_to_json(again) == catalog_to_json(CAT)
    assert again.identity("iden3") == CAT.identity("iden3")


def test_empty_file(tmp_path):
    p = tmp_path / "empty.json"
    p.write_text("")
    with pytest.raises(SchemaError):
        load_catalog(p)


def test_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        load_catalog(p)


def test_schema_violation_names_path():
    data = raw()
    data["identities"][0]["parity"] = "sometimes"
    with pytest.raises(SchemaError, match="identities/0/parity"):
        catalog_from_dict(data)


def test_wrong_version():
    data = raw()
    data["schema"] = "wzlab-catalog/0"
    with pytest.raises(SchemaError):
        catalog_from_dict(data)


def test_t_at_zero_invariant():
    data = raw()
    rec = next(d for d in data["identities"] if d["id"] == "iden2")
    rec["t_model"]["numerator"] = ["0/1", "-3/1", "0/1", "5/1"]
    with pytest.raises(InvariantViolation) as info:
        catalog_from_dict(data)
    assert info.value.record_id == "iden2"
    assert info.value.field == "t_model"


def test_parity_invariant():
    data = raw()
    rec = next(d for d in data["identities"] if d["id"] == "iden1")
    rec["parity"] = "antiperiodic"
    with pytest.raises(InvariantViolation):
        catalog_from_dict(data)


def test_duplicate_id():
    data = raw()
    data["identities"].append(copy.deepcopy(data["identities"][0]))
    with pytest.raises(InvariantViolation):
        catalog_from_dict(data)


def test_env_override(tmp_path, monkeypatch):
    data = raw()
    data["identities"] = [d for d in data["identities"] if d["id"] == "rama42"]
    p = tmp_path / "small.json"
    p.write_text(json.dumps(data))
    monkeypatch.setenv(ENV_VAR, str(p))
    assert default_path() == p
    assert default_catalog().identity_ids() == ["rama42"]
    monkeypatch.delenv(ENV_VAR)
    assert len(default_catalog().identity_ids()) == 11


def test_family_cosk_values():
    with mpmath.workprec(P + 64):
        pi = const_pi(P)
        assert abs(family_eval("coskfamily", 0, P) - 1 / pi ** 2) < mpf("1e-30")
        assert abs(family_eval("coskfamily", Fraction(1, 3), P) - 1 / (4 * pi ** 2)) < mpf("1e-30")
        assert abs(family_eval("coskfamily", Fraction(1, 2), P)) < mpf("1e-30")


def test_family_kshift_values():
    target = tag_value("1/pi^2", P)
    with mpmath.workprec(P + 64):
        for k in (0, 1, 2, 5):
            assert abs(family_eval("kshift48", k, P) - 48 * target) < mpf("1e-30")


def test_family_domains():
    with pytest.raises(ParameterOutOfDomain):
        family_eval("coskfamily", Fraction(3, 4), P)
    with pytest.raises(ParameterOutOfDomain):
        family_eval("kshift48", Fraction(1, 2), P)
    with pytest.raises(ParameterOutOfDomain):
        family_eval("kshift48", -1, P)


def test_module_does_not_cache_env_path(monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert catalog_mod.default_path().name == "catalog.json"
