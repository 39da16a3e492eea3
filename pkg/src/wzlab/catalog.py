"""Declarative catalog of series, identities, WZ pairs, lemmas and families.

The shipped data lives in ``data/catalog.json`` (schema ``wzlab-catalog/1``).
Rationals are ``"p/q"`` strings; bivariate polynomials are nested arrays with
``rows[i][j]`` the coefficient of ``n^i p^j``.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema
import mpmath

from .errors import InvariantViolation, ParameterOutOfDomain, SchemaError, UnknownRecord
from .exact import BiPoly, BiRat, PochFactor, WZPairSpec, as_rat, rat_str
from .mpreal import CONSTANT_TAGS, TrigRationalModel, working_precision
from .summation import HyperSeriesSpec, Prefactor, ScaledSeries

SCHEMA_VERSION = "wzlab-catalog/1"
ENV_VAR = "WZLAB_CATALOG"

_RAT = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_POLY1 = {"type": "array", "items": _RAT, "minItems": 1}
_POLY2 = {"type": "array", "items": _POLY1, "minItems": 1}
_TERM = {
    "type": "object",
    "required": ["coeff", "tag"],
    "properties": {"coeff": _RAT, "tag": {"enum": list(CONSTANT_TAGS)}},
    "additionalProperties": False,
}
_FACTOR = {
    "type": "object",
    "required": ["offset", "exponent", "side"],
    "properties": {
        "offset": _RAT,
        "exponent": {"type": "integer", "minimum": 1},
        "side": {"enum": ["num", "den"]},
        "k_coupling": _RAT,
        "x_coupling": _RAT,
    },
    "additionalProperties": False,
}
_BIRAT = {
    "type": "object",
    "required": ["num", "den"],
    "properties": {"num": _POLY2, "den": _POLY2},
    "additionalProperties": False,
}
_SERIES = {
    "type": "object",
    "required": ["base", "alternating", "factors", "weight"],
    "properties": {
        "base": _RAT,
        "alternating": {"type": "boolean"},
        "factors": {"type": "array", "items": _FACTOR},
        "weight": _POLY2,
        "extra_weight": {"oneOf": [_BIRAT, {"type": "null"}]},
        "harmonic_weight": {"oneOf": [_POLY2, {"type": "null"}]},
        "param": {"enum": ["x", "k"]},
    },
    "additionalProperties": False,
}
_PREFACTOR = {
    "type": "object",
    "properties": {
        "const": _RAT,
        "const_sqrt": _RAT,
        "base": _RAT,
        "gammas": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["offset", "exponent"],
                "properties": {"offset": _RAT, "exponent": {"type": "integer"}},
                "additionalProperties": False,
            },
        },
        "rat_num": _POLY1,
        "rat_den": _POLY1,
    },
    "additionalProperties": False,
}
_SCALED = {
    "type": "object",
    "required": ["prefactor", "series"],
    "properties": {"prefactor": _PREFACTOR, "series": _SERIES},
    "additionalProperties": False,
}
_TMODEL = {
    "type": "object",
    "required": ["numerator", "denominator", "pi_power"],
    "properties": {
        "numerator": _POLY1,
        "denominator": _POLY1,
        "pi_power": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}
_WZ = {
    "type": "object",
    "required": ["kernel", "base", "sign_n", "sign_k", "f_mult", "g_mult"],
    "properties": {
        "kernel": {"type": "array", "items": _FACTOR},
        "base": _RAT,
        "sign_n": {"type": "boolean"},
        "sign_k": {"type": "boolean"},
        "f_mult": _BIRAT,
        "g_mult": {"oneOf": [_BIRAT, {"type": "null"}]},
    },
    "additionalProperties": False,
}
_IDENTITY = {
    "type": "object",
    "required": ["id", "kind", "lhs", "t_model", "expected_expansion", "check_mode"],
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "aliases": {"type": "array", "items": {"type": "string"}},
        "kind": {"enum": ["identity", "ramanujan"]},
        "description": {"type": "string"},
        "lhs": _SCALED,
        "companion": {"oneOf": [_SCALED, {"type": "null"}]},
        "t_model": _TMODEL,
        "parity": {"enum": ["periodic", "antiperiodic", None]},
        "expected_expansion": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["order", "coeff", "tag"],
                "properties": {"order": {"type": "integer", "minimum": 0}, "coeff": _RAT,
                               "tag": {"enum": list(CONSTANT_TAGS)}},
                "additionalProperties": False,
            },
        },
        "wz_pair": {"oneOf": [_WZ, {"type": "null"}]},
        "check_mode": {"enum": ["exact+numeric", "numeric-only"]},
    },
    "additionalProperties": False,
}
_LEMMA = {
    "type": "object",
    "required": ["id", "kind", "series", "center", "variable"],
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "aliases": {"type": "array", "items": {"type": "string"}},
        "kind": {"enum": ["lemma", "auxiliary"]},
        "description": {"type": "string"},
        "series": _SCALED,
        "center": _RAT,
        "variable": {"enum": ["u", "x"]},
        "expected_jet": {"type": "array", "items": {"type": "array", "items": _TERM}},
        "t_model": {"oneOf": [_TMODEL, {"type": "null"}]},
        "sample_xs": {"type": "array", "items": _RAT},
    },
    "additionalProperties": False,
}
_FAMILY = {
    "type": "object",
    "required": ["id", "series", "expected", "k_domain"],
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "aliases": {"type": "array", "items": {"type": "string"}},
        "description": {"type": "string"},
        "series": _SCALED,
        "expected": _TMODEL,
        "k_domain": {"enum": ["abs_le_half", "nonneg_int"]},
    },
    "additionalProperties": False,
}
SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "identities", "lemmas", "families"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "identities": {"type": "array", "items": _IDENTITY},
        "lemmas": {"type": "array", "items": _LEMMA},
        "families": {"type": "array", "items": _FAMILY},
    },
    "additionalProperties": False,
}


# -- records -----------------------------------------------------------------

@dataclass(frozen=True)
class ExpansionTerm:
    order: int
    coeff: Fraction
    tag: str


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    kind: str
    lhs: ScaledSeries
    companion: ScaledSeries | None
    t_model: TrigRationalModel
    parity: str | None
    expected_expansion: tuple[ExpansionTerm, ...]
    wz_pair: WZPairSpec | None
    check_mode: str
    aliases: tuple[str, ...] = ()
    description: str = ""

    @property
    def parity_sign(self) -> int | None:
        return {"periodic": 1, "antiperiodic": -1}.get(self.parity)

    @property
    def companion_order(self) -> int:
        """Power of x in front of the companion sum."""
        return self.companion.prefactor.vanishing_order() if self.companion else 0


@dataclass(frozen=True)
class LemmaRecord:
    id: str
    kind: str
    series: ScaledSeries
    center: Fraction
    variable: str
    expected_jet: tuple[tuple[tuple[Fraction, str], ...], ...] = ()
    t_model: TrigRationalModel | None = None
    sample_xs: tuple[Fraction, ...] = ()
    aliases: tuple[str, ...] = ()
    description: str = ""


@dataclass(frozen=True)
class FamilyRecord:
    id: str
    series: ScaledSeries
    expected: TrigRationalModel
    k_domain: str
    aliases: tuple[str, ...] = ()
    description: str = ""


@dataclass
class Catalog:
    identities: dict = field(default_factory=dict)
    lemmas: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    aliases: dict = field(default_factory=dict)
    source: str = ""

    def resolve(self, name: str) -> str:
        return self.aliases.get(name, name)

    def _get(self, table: dict, name: str, what: str):
        key = self.resolve(name)
        if key not in table:
            raise UnknownRecord(f"unknown {what} {name!r}")
        return table[key]

    def identity(self, name: str) -> IdentityRecord:
        return self._get(self.identities, name, "identity")

    def lemma(self, name: str) -> LemmaRecord:
        return self._get(self.lemmas, name, "lemma")

    def family(self, name: str) -> FamilyRecord:
        return self._get(self.families, name, "family")

    def kind_of(self, name: str) -> str | None:
        key = self.resolve(name)
        for kind, table in (("identity", self.identities), ("lemma", self.lemmas),
                            ("family", self.families)):
            if key in table:
                return kind
        return None

    def series(self, name: str) -> ScaledSeries:
        """The summable object behind an id: a record's lhs or lemma series."""
        kind = self.kind_of(name)
        if kind == "identity":
            return self.identity(name).lhs
        if kind == "lemma":
            return self.lemma(name).series
        if kind == "family":
            return self.family(name).series
        raise UnknownRecord(f"unknown series {name!r}")

    def identity_ids(self) -> list[str]:
        return list(self.identities)

    def lemma_ids(self) -> list[str]:
        return list(self.lemmas)


# -- (de)serialisation -------------------------------------------------------

def _rats(seq) -> tuple:
    return tuple(as_rat(c) for c in seq)


def _poly_out(seq) -> list[str]:
    return [rat_str(Fraction(c)) for c in seq]


def factor_from_json(d) -> PochFactor:
    return PochFactor(as_rat(d["offset"]), int(d["exponent"]), d["side"],
                      as_rat(d.get("k_coupling", "0")), as_rat(d.get("x_coupling", "0")))


def factor_to_json(f: PochFactor) -> dict:
    out = {"offset": rat_str(f.offset), "exponent": f.exponent, "side": f.side}
    if f.k_coupling:
        out["k_coupling"] = rat_str(f.k_coupling)
    if f.x_coupling:
        out["x_coupling"] = rat_str(f.x_coupling)
    return out


def birat_from_json(d) -> BiRat:
    return BiRat(BiPoly.from_nested(d["num"]), BiPoly.from_nested(d["den"]))


def birat_to_json(r: BiRat) -> dict:
    return {"num": r.num.to_nested(), "den": r.den.to_nested()}


def series_from_json(d) -> HyperSeriesSpec:
    return HyperSeriesSpec(
        base=as_rat(d["base"]),
        alternating=bool(d["alternating"]),
        factors=tuple(factor_from_json(f) for f in d["factors"]),
        weight=BiPoly.from_nested(d["weight"]),
        extra_weight=birat_from_json(d["extra_weight"]) if d.get("extra_weight") else None,
        harmonic_weight=BiPoly.from_nested(d["harmonic_weight"]) if d.get("harmonic_weight") else None,
        param=d.get("param", "x"),
    )


def series_to_json(s: HyperSeriesSpec) -> dict:
    return {
        "base": rat_str(s.base),
        "alternating": s.alternating,
        "factors": [factor_to_json(f) for f in s.factors],
        "weight": s.weight.to_nested(),
        "extra_weight": birat_to_json(s.extra_weight) if s.extra_weight else None,
        "harmonic_weight": s.harmonic_weight.to_nested() if s.harmonic_weight else None,
        "param": s.param,
    }


def prefactor_from_json(d) -> Prefactor:
    return Prefactor(
        const=as_rat(d.get("const", "1")),
        const_sqrt=as_rat(d.get("const_sqrt", "1")),
        base=as_rat(d.get("base", "1")),
        gammas=tuple((as_rat(g["offset"]), int(g["exponent"])) for g in d.get("gammas", [])),
        rat_num=_rats(d.get("rat_num", ["1"])),
        rat_den=_rats(d.get("rat_den", ["1"])),
    )


def prefactor_to_json(p: Prefactor) -> dict:
    return {
        "const": rat_str(p.const),
        "const_sqrt": rat_str(p.const_sqrt),
        "base": rat_str(p.base),
        "gammas": [{"offset": rat_str(c), "exponent": e} for c, e in p.gammas],
        "rat_num": _poly_out(p.rat_num),
        "rat_den": _poly_out(p.rat_den),
    }


def scaled_from_json(d) -> ScaledSeries:
    return ScaledSeries(prefactor_from_json(d["prefactor"]), series_from_json(d["series"]))


def scaled_to_json(s: ScaledSeries) -> dict:
    return {"prefactor": prefactor_to_json(s.prefactor), "series": series_to_json(s.series)}


def tmodel_from_json(d) -> TrigRationalModel:
    return TrigRationalModel(_rats(d["numerator"]), _rats(d["denominator"]), int(d["pi_power"]))


def tmodel_to_json(m: TrigRationalModel) -> dict:
    return {"numerator": _poly_out(m.numerator), "denominator": _poly_out(m.denominator),
            "pi_power": m.pi_power}


def wz_from_json(d) -> WZPairSpec:
    return WZPairSpec(
        kernel=tuple(factor_from_json(f) for f in d["kernel"]),
        base=as_rat(d["base"]),
        sign_n=bool(d["sign_n"]),
        sign_k=bool(d["sign_k"]),
        f_mult=birat_from_json(d["f_mult"]),
        g_mult=birat_from_json(d["g_mult"]) if d.get("g_mult") else None,
    )


def wz_to_json(p: WZPairSpec) -> dict:
    return {
        "kernel": [factor_to_json(f) for f in p.kernel],
        "base": rat_str(p.base),
        "sign_n": p.sign_n,
        "sign_k": p.sign_k,
        "f_mult": birat_to_json(p.f_mult),
        "g_mult": birat_to_json(p.g_mult) if p.g_mult else None,
    }


def identity_to_json(r: IdentityRecord) -> dict:
    return {
        "id": r.id,
        "aliases": list(r.aliases),
        "kind": r.kind,
        "description": r.description,
        "lhs": scaled_to_json(r.lhs),
        "companion": scaled_to_json(r.companion) if r.companion else None,
        "t_model": tmodel_to_json(r.t_model),
        "parity": r.parity,
        "expected_expansion": [{"order": e.order, "coeff": rat_str(e.coeff), "tag": e.tag}
                               for e in r.expected_expansion],
        "wz_pair": wz_to_json(r.wz_pair) if r.wz_pair else None,
        "check_mode": r.check_mode,
    }


def lemma_to_json(r: LemmaRecord) -> dict:
    return {
        "id": r.id,
        "aliases": list(r.aliases),
        "kind": r.kind,
        "description": r.description,
        "series": scaled_to_json(r.series),
        "center": rat_str(r.center),
        "variable": r.variable,
        "expected_jet": [[{"coeff": rat_str(c), "tag": t} for c, t in terms] for terms in r.expected_jet],
        "t_model": tmodel_to_json(r.t_model) if r.t_model else None,
        "sample_xs": [rat_str(x) for x in r.sample_xs],
    }


def family_to_json(r: FamilyRecord) -> dict:
    return {
        "id": r.id,
        "aliases": list(r.aliases),
        "description": r.description,
        "series": scaled_to_json(r.series),
        "expected": tmodel_to_json(r.expected),
        "k_domain": r.k_domain,
    }


def catalog_to_json(cat: Catalog) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "identities": [identity_to_json(r) for r in cat.identities.values()],
        "lemmas": [lemma_to_json(r) for r in cat.lemmas.values()],
        "families": [family_to_json(r) for r in cat.families.values()],
    }


def _parse_identity(d) -> IdentityRecord:
    return IdentityRecord(
        id=d["id"],
        kind=d["kind"],
        lhs=scaled_from_json(d["lhs"]),
        companion=scaled_from_json(d["companion"]) if d.get("companion") else None,
        t_model=tmodel_from_json(d["t_model"]),
        parity=d.get("parity"),
        expected_expansion=tuple(ExpansionTerm(int(e["order"]), as_rat(e["coeff"]), e["tag"])
                                 for e in d["expected_expansion"]),
        wz_pair=wz_from_json(d["wz_pair"]) if d.get("wz_pair") else None,
        check_mode=d["check_mode"],
        aliases=tuple(d.get("aliases", [])),
        description=d.get("description", ""),
    )


def _parse_lemma(d) -> LemmaRecord:
    return LemmaRecord(
        id=d["id"],
        kind=d["kind"],
        series=scaled_from_json(d["series"]),
        center=as_rat(d["center"]),
        variable=d["variable"],
        expected_jet=tuple(tuple((as_rat(t["coeff"]), t["tag"]) for t in terms)
                           for terms in d.get("expected_jet", [])),
        t_model=tmodel_from_json(d["t_model"]) if d.get("t_model") else None,
        sample_xs=_rats(d.get("sample_xs", [])),
        aliases=tuple(d.get("aliases", [])),
        description=d.get("description", ""),
    )


def _parse_family(d) -> FamilyRecord:
    return FamilyRecord(
        id=d["id"],
        series=scaled_from_json(d["series"]),
        expected=tmodel_from_json(d["expected"]),
        k_domain=d["k_domain"],
        aliases=tuple(d.get("aliases", [])),
        description=d.get("description", ""),
    )


# -- invariants --------------------------------------------------------------

_PI_TAG = {1: "1/pi", 2: "1/pi^2"}


def check_identity(r: IdentityRecord) -> None:
    m = r.t_model
    t0 = m.value_at_zero()
    if r.kind == "identity":
        if m.pi_power not in _PI_TAG or t0 != 1:
            raise InvariantViolation(r.id, "t_model", f"t(0) must be 1/pi or 1/pi^2, got {t0}/pi^{m.pi_power}")
    zero = [e for e in r.expected_expansion if e.order == 0]
    if len(zero) != 1:
        raise InvariantViolation(r.id, "expected_expansion", "exactly one order-0 entry required")
    e0 = zero[0]
    if e0.coeff != t0 or e0.tag != _PI_TAG.get(m.pi_power):
        raise InvariantViolation(r.id, "expected_expansion[0]",
                                 f"order-0 entry {e0.coeff}*{e0.tag} differs from t(0)")
    orders = [e.order for e in r.expected_expansion]
    if len(set(orders)) != len(orders):
        raise InvariantViolation(r.id, "expected_expansion", "duplicate orders")
    if r.kind == "identity":
        if r.companion is None:
            raise InvariantViolation(r.id, "companion", "identity records need a companion series")
        want = "antiperiodic" if r.lhs.series.alternating else "periodic"
        if r.parity != want:
            raise InvariantViolation(r.id, "parity", f"lhs alternation implies {want}, got {r.parity}")
        if m.parity() != r.parity_sign:
            raise InvariantViolation(r.id, "t_model", f"t(x+1) does not match parity {r.parity}")
    if r.check_mode == "exact+numeric" and (r.wz_pair is None or not r.wz_pair.has_g):
        raise InvariantViolation(r.id, "wz_pair", "exact+numeric records need a WZ pair with G")
    if r.check_mode == "numeric-only" and r.wz_pair is not None and r.wz_pair.has_g:
        raise InvariantViolation(r.id, "check_mode", "record has a full WZ pair but is numeric-only")


def check_lemma(r: LemmaRecord) -> None:
    if r.kind == "lemma" and not r.expected_jet:
        raise InvariantViolation(r.id, "expected_jet", "lemma records need an expected jet")
    for f in r.series.series.factors:
        if f.side == "den":
            a = f.base_at(x=r.center)
            if a <= 0 and a.denominator == 1:
                raise InvariantViolation(r.id, "series", f"series is singular at the center {r.center}")


def _build(data: dict, source: str) -> Catalog:
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{source}: {path}: {exc.message}") from exc
    cat = Catalog(source=source)
    for kind, items, parse, check, table in (
        ("identity", data["identities"], _parse_identity, check_identity, cat.identities),
        ("lemma", data["lemmas"], _parse_lemma, check_lemma, cat.lemmas),
        ("family", data["families"], _parse_family, None, cat.families),
    ):
        for d in items:
            rid = d.get("id", "?")
            try:
                rec = parse(d)
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise InvariantViolation(rid, kind, str(exc)) from exc
            if check is not None:
                check(rec)
            if rec.id in cat.aliases or rec.id in table:
                raise InvariantViolation(rec.id, "id", "duplicate id")
            table[rec.id] = rec
            cat.aliases[rec.id] = rec.id
            for a in rec.aliases:
                if a in cat.aliases and cat.aliases[a] != rec.id:
                    raise InvariantViolation(rec.id, "aliases", f"alias {a!r} already used")
                cat.aliases[a] = rec.id
    return cat


def catalog_from_dict(data: dict, source: str = "<dict>") -> Catalog:
    return _build(data, source)


def default_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("wzlab") / "data" / "catalog.json"))


def load_catalog(path=None) -> Catalog:
    """Parse and validate a catalog file (default: the shipped one)."""
    path = Path(path) if path is not None else default_path()
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise SchemaError(f"{path}: empty catalog file")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON: {exc}") from exc
    return _build(data, str(path))


@lru_cache(maxsize=4)
def _cached(path: str) -> Catalog:
    return load_catalog(path)


def default_catalog() -> Catalog:
    return _cached(str(default_path()))


# -- parametrised families ---------------------------------------------------

def family_eval(family, k, precision: int = 256, catalog: Catalog | None = None):
    """Value of a k-parametrised family sum at an exact k."""
    if isinstance(family, str):
        family = (catalog or default_catalog()).family(family)
    k = as_rat(k) if not isinstance(k, Fraction) else k
    if family.k_domain == "abs_le_half" and abs(k) > Fraction(1, 2):
        raise ParameterOutOfDomain(f"{family.id} needs |k| <= 1/2, got {k}")
    if family.k_domain == "nonneg_int" and (k.denominator != 1 or k < 0):
        raise ParameterOutOfDomain(f"{family.id} needs a non-negative integer k, got {k}")
    res = family.series.evaluate(Fraction(0), precision, k=k)
    with mpmath.workprec(working_precision(precision)):
        return +res.value
