"""JSON instance files with exact numbers.

Numbers may be JSON integers, decimal strings (``"0.1"``), ``"a/b"`` strings
or bare JSON decimals; all are read exactly.  Unbounded multiplicities are
written as ``null``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

from .model import IikInstance, InstanceError, MinkInstance, fraction_str

Instance = Union[IikInstance, MinkInstance]


class InstanceFileError(ValueError):
    """Malformed or invalid instance document."""


def _num(value, where: str) -> Fraction:
    if isinstance(value, bool) or value is None:
        raise InstanceFileError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InstanceFileError(f"{where}: cannot read {value!r} as a number") from None
    raise InstanceFileError(f"{where}: expected a number, got {type(value).__name__}")


def _nums(doc, key):
    if key not in doc:
        raise InstanceFileError(f"missing field {key!r}")
    vals = doc[key]
    if not isinstance(vals, list):
        raise InstanceFileError(f"{key}: expected a list")
    return [_num(v, f"{key}[{i}]") for i, v in enumerate(vals)]


def _ints(doc, key, allow_null=False):
    out = []
    for i, v in enumerate(doc[key]):
        if v is None or (isinstance(v, str) and v.strip().lower() in ("inf", "infinity")):
            if not allow_null:
                raise InstanceFileError(f"{key}[{i}]: unbounded value not allowed")
            out.append(None)
            continue
        q = _num(v, f"{key}[{i}]")
        if q.denominator != 1:
            raise InstanceFileError(f"{key}[{i}]: expected an integer, got {fraction_str(q)}")
        out.append(int(q))
    return out


def parse_instance(document) -> Instance:
    """Read an instance from JSON text or an already-decoded dict."""
    if isinstance(document, (str, bytes)):
        try:
            doc = json.loads(document, parse_float=Fraction, parse_int=int)
        except json.JSONDecodeError as exc:
            raise InstanceFileError(f"syntax error: {exc}") from None
    else:
        doc = document
    if not isinstance(doc, dict):
        raise InstanceFileError("top level must be an object")
    kind = doc.get("type")
    try:
        if kind == "iik":
            p, w, b = _nums(doc, "profits"), _nums(doc, "weights"), _nums(doc, "capacities")
            extra = {}
            if doc.get("discounts") is not None:
                extra["discounts"] = _ints(doc, "discounts")
            if doc.get("multiplicities") is not None:
                extra["multiplicities"] = _ints(doc, "multiplicities", allow_null=True)
            if "n" in doc and doc["n"] != len(p):
                raise InstanceFileError(f"n is {doc['n']} but {len(p)} profits are given")
            if "T" in doc and doc["T"] != len(b):
                raise InstanceFileError(f"T is {doc['T']} but {len(b)} capacities are given")
            inst = IikInstance(p, w, b, **extra)
            inst.validate_strict()
            return inst
        if kind == "mink":
            if "demand" not in doc:
                raise InstanceFileError("missing field 'demand'")
            c = _nums(doc, "costs")
            if "n" in doc and doc["n"] != len(c):
                raise InstanceFileError(f"n is {doc['n']} but {len(c)} costs are given")
            return MinkInstance(c, _nums(doc, "weights"), _num(doc["demand"], "demand"))
    except InstanceError as exc:
        raise InstanceFileError(str(exc)) from None
    raise InstanceFileError(f"unknown instance type {kind!r}")


def _out(v: Fraction):
    return int(v) if v.denominator == 1 else fraction_str(v)


def instance_to_dict(inst: Instance) -> dict:
    if isinstance(inst, IikInstance):
        doc = {"type": "iik", "n": inst.n, "T": inst.T,
               "profits": [_out(v) for v in inst.profits],
               "weights": [_out(v) for v in inst.weights],
               "capacities": [_out(v) for v in inst.capacities]}
        if not inst.unit_discounts:
            doc["discounts"] = list(inst.discounts)
        if not inst.binary:
            doc["multiplicities"] = list(inst.multiplicities)
        return doc
    if isinstance(inst, MinkInstance):
        return {"type": "mink", "n": inst.n,
                "costs": [_out(v) for v in inst.costs],
                "weights": [_out(v) for v in inst.weights],
                "demand": _out(inst.demand)}
    raise TypeError(f"not an instance: {type(inst).__name__}")


def serialize_instance(inst: Instance) -> str:
    """Canonical text: fixed key order, two-space indent, trailing newline."""
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def write_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_instance(inst))
