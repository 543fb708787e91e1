"""Canonical JSON documents for tensors, series, triples and verdicts.

Every document is an object ``{"schema": "rmatrix/1", "kind": ..., "payload": ...}``
written with sorted keys.  Scalars use the canonical forms of
:mod:`rmatrix.scalars`; parsing rejects anything non-canonical, so that
``serialize(parse(text)) == text`` for every accepted document.
"""
from __future__ import annotations

import json
from typing import Any

from . import lie
from .lie import BasisIndex
from .manin import LoopElem, SeriesTensor
from .scalars import scalar_from_json, scalar_to_json
from .sheaf import MatTriple, check_curve
from .tensor_poly import VARS, MLaurent, RatFun, Tensor2, Tensor3, _orient
from .verify import Verdict

SCHEMA = "rmatrix/1"
KINDS = ("tensor2", "tensor3", "series", "triple", "verdicts")


class SchemaError(ValueError):
    """The text is not a well-formed document of the supported schema."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise SchemaError(msg)


def _int(v, what: str) -> int:
    _require(isinstance(v, int) and not isinstance(v, bool), f"{what} must be an integer")
    return v


def _scalar(obj):
    try:
        return scalar_from_json(obj)
    except (ValueError, TypeError) as ex:
        raise SchemaError(str(ex)) from None


def _basis(text, n: int) -> BasisIndex:
    _require(isinstance(text, str), f"basis index must be a string, got {text!r}")
    try:
        b = BasisIndex.parse(text)
    except ValueError as ex:
        raise SchemaError(str(ex)) from None
    _require(b.valid_for(n), f"{text} is not a basis index of sl_{n}")
    return b


# -- RatFun ------------------------------------------------------------------

def _ratfun_to_json(v: RatFun) -> dict:
    num = v.num.trim()
    terms = sorted(num.terms.items())
    return {
        "den": [[a, b, m] for (a, b), m in v.den],
        "num": {"terms": [[list(e), scalar_to_json(c)] for e, c in terms], "vars": list(num.vars)},
    }


def _ratfun_from_json(obj) -> RatFun:
    _require(isinstance(obj, dict) and set(obj) == {"den", "num"}, "coefficient needs exactly 'num' and 'den'")
    num = obj["num"]
    _require(isinstance(num, dict) and set(num) == {"terms", "vars"}, "numerator needs 'vars' and 'terms'")
    names = num["vars"]
    _require(isinstance(names, list) and all(isinstance(s, str) and s in VARS for s in names),
             f"variables must come from {VARS}")
    _require(list(names) == sorted(names, key=VARS.index) and len(set(names)) == len(names),
             "variables must be distinct and in canonical order")
    terms = {}
    _require(isinstance(num["terms"], list), "terms must be a list")
    for item in num["terms"]:
        _require(isinstance(item, list) and len(item) == 2, "a term is [exponents, coefficient]")
        exps, c = item
        _require(isinstance(exps, list) and len(exps) == len(names), "exponent vector length mismatch")
        key = tuple(_int(e, "exponent") for e in exps)
        _require(key not in terms, "repeated exponent vector")
        val = _scalar(c)
        _require(bool(val), "zero coefficients are not written")
        terms[key] = val
    den = []
    _require(isinstance(obj["den"], list), "den must be a list")
    for item in obj["den"]:
        _require(isinstance(item, list) and len(item) == 3, "a den factor is [a, b, multiplicity]")
        a, b, m = item
        _require(isinstance(a, str) and isinstance(b, str) and a in VARS and b in VARS and a != b,
                 f"bad den factor {item!r}")
        _require(_orient(a, b)[1] == 1, f"den factor ({a}-{b}) is not canonically oriented")
        _require(_int(m, "multiplicity") > 0, "multiplicities must be positive")
        den.append(((a, b), m))
    den_t = tuple(den)
    _require(list(den_t) == sorted(den_t) and len({f for f, _ in den_t}) == len(den_t),
             "den factors must be distinct and sorted")
    canon = RatFun.make(MLaurent._raw(tuple(names), terms), den_t)
    _require(_ratfun_to_json(canon) == obj, "coefficient is not in normalized form")
    return canon


# -- tensors -----------------------------------------------------------------

def _slot_name(b: BasisIndex | None) -> str:
    return "1" if b is None else str(b)


def _tensor_to_json(t) -> dict:
    records = []
    for key, v in t.sorted_items():
        rec = {"slots": [_slot_name(b) for b in key]}
        rec.update(_ratfun_to_json(v))
        records.append(rec)
    return {"entries": records, "n": t.n}


def _tensor_from_json(obj, cls):
    _require(isinstance(obj, dict) and set(obj) == {"entries", "n"}, "tensor needs exactly 'n' and 'entries'")
    n = _int(obj["n"], "n")
    _require(n >= 2, "n must be at least 2")
    _require(isinstance(obj["entries"], list), "entries must be a list")
    entries = {}
    for rec in obj["entries"]:
        _require(isinstance(rec, dict) and set(rec) == {"slots", "num", "den"}, "bad tensor record")
        slots = rec["slots"]
        _require(isinstance(slots, list) and len(slots) == cls.arity, f"expected {cls.arity} slots")
        key = tuple(None if (s == "1" and cls is Tensor3) else _basis(s, n) for s in slots)
        _require(key not in entries, "repeated slot key")
        coeff = _ratfun_from_json({"num": rec["num"], "den": rec["den"]})
        _require(bool(coeff), "zero entries are not written")
        entries[key] = coeff
    t = cls._raw(n, entries)
    _require([r["slots"] for r in _tensor_to_json(t)["entries"]] == [r["slots"] for r in obj["entries"]],
             "entries are not in canonical order")
    return t


# -- series, triples, verdicts ------------------------------------------------

def _series_to_json(s: SeriesTensor) -> dict:
    pos = lie.basis_position(s.n)
    records = []
    for (k, a) in sorted(s.coeffs, key=lambda ka: (ka[0], pos[ka[1]])):
        p = s.coeffs[(k, a)]
        terms = [[e, str(b), scalar_to_json(c)]
                 for (e, b), c in sorted(p.terms.items(), key=lambda t: (t[0][0], pos[t[0][1]]))]
        records.append({"a": str(a), "k": k, "terms": terms})
    return {"N": s.order, "coefficients": records, "n": s.n}


def _series_from_json(obj) -> SeriesTensor:
    _require(isinstance(obj, dict) and set(obj) == {"N", "coefficients", "n"}, "series needs 'n', 'N', 'coefficients'")
    n, order = _int(obj["n"], "n"), _int(obj["N"], "N")
    _require(n >= 2 and order >= 0, "bad n or N")
    coeffs = {}
    _require(isinstance(obj["coefficients"], list), "coefficients must be a list")
    for rec in obj["coefficients"]:
        _require(isinstance(rec, dict) and set(rec) == {"a", "k", "terms"}, "bad series record")
        k = _int(rec["k"], "k")
        _require(0 <= k <= order, "k out of range")
        a = _basis(rec["a"], n)
        terms = {}
        _require(isinstance(rec["terms"], list), "terms must be a list")
        for item in rec["terms"]:
            _require(isinstance(item, list) and len(item) == 3, "a series term is [exp, basis, coefficient]")
            e, b, c = item
            key = (_int(e, "exponent"), _basis(b, n))
            _require(key not in terms, "repeated series term")
            val = _scalar(c)
            _require(bool(val), "zero coefficients are not written")
            terms[key] = val
        _require((k, a) not in coeffs and bool(terms), "repeated or empty series record")
        coeffs[(k, a)] = LoopElem(n, terms)
    s = SeriesTensor(n, order, coeffs)
    _require(_series_to_json(s) == obj, "series is not in canonical order")
    return s


def _triple_to_json(t: MatTriple) -> dict:
    mat = lambda m: [[scalar_to_json(v) for v in row] for row in m]  # noqa: E731
    return {"curve": t.curve, "first": mat(t.first), "m": t.m, "n": t.n, "second": mat(t.second)}


def _triple_from_json(obj) -> MatTriple:
    _require(isinstance(obj, dict) and set(obj) == {"curve", "first", "m", "n", "second"}, "bad triple")
    try:
        check_curve(obj["curve"])
    except ValueError as ex:
        raise SchemaError(str(ex)) from None
    n, m = _int(obj["n"], "n"), _int(obj["m"], "m")

    def mat(rows):
        _require(isinstance(rows, list) and len(rows) == n, f"triple matrices need {n} rows")
        out = []
        for row in rows:
            _require(isinstance(row, list) and len(row) == m, f"triple matrices need {m} columns")
            out.append([_scalar(v) for v in row])
        return out

    try:
        return MatTriple(n, m, obj["curve"], mat(obj["first"]), mat(obj["second"]))
    except (ValueError, TypeError) as ex:
        raise SchemaError(str(ex)) from None


def _verdicts_from_json(obj) -> list[Verdict]:
    _require(isinstance(obj, list), "verdicts must be a list")
    out = []
    for rec in obj:
        _require(isinstance(rec, dict) and {"identity", "pass"} <= set(rec) <= {"identity", "pass", "witness"},
                 "bad verdict record")
        _require(isinstance(rec["identity"], str) and isinstance(rec["pass"], bool), "bad verdict fields")
        w = rec.get("witness")
        _require(w is None or isinstance(w, str), "witness must be a string")
        _require(("witness" in rec) == (w is not None), "null witness must be omitted")
        out.append(Verdict(rec["identity"], rec["pass"], w))
    return out


# -- documents -----------------------------------------------------------------

def kind_of(v: Any) -> str:
    if isinstance(v, Tensor2):
        return "tensor2"
    if isinstance(v, Tensor3):
        return "tensor3"
    if isinstance(v, SeriesTensor):
        return "series"
    if isinstance(v, MatTriple):
        return "triple"
    if isinstance(v, (list, tuple)) and all(isinstance(x, Verdict) for x in v):
        return "verdicts"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def to_document(v: Any) -> dict:
    kind = kind_of(v)
    if kind in ("tensor2", "tensor3"):
        payload = _tensor_to_json(v)
    elif kind == "series":
        payload = _series_to_json(v)
    elif kind == "triple":
        payload = _triple_to_json(v)
    else:
        payload = [x.to_json() for x in v]
    return {"kind": kind, "payload": payload, "schema": SCHEMA}


def serialize(v: Any) -> str:
    """Canonical UTF-8 JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(to_document(v), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def from_document(doc: Any) -> Any:
    _require(isinstance(doc, dict), "a document must be a JSON object")
    _require("schema" in doc, "missing 'schema'")
    _require(doc["schema"] == SCHEMA, f"schema version {doc['schema']!r} is not supported (expected {SCHEMA!r})")
    _require(set(doc) == {"schema", "kind", "payload"}, "a document has exactly 'schema', 'kind', 'payload'")
    kind = doc["kind"]
    _require(kind in KINDS, f"unknown kind {kind!r}")
    payload = doc["payload"]
    if kind == "tensor2":
        return _tensor_from_json(payload, Tensor2)
    if kind == "tensor3":
        return _tensor_from_json(payload, Tensor3)
    if kind == "series":
        return _series_from_json(payload)
    if kind == "triple":
        return _triple_from_json(payload)
    return _verdicts_from_json(payload)


def parse(text: str) -> Any:
    """Parse a document; raises :class:`SchemaError` on any malformed input."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as ex:
        raise SchemaError(f"invalid JSON: {ex}") from None
    return from_document(doc)
