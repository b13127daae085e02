"""Replayable witness records for verdicts and audit failures.

A record is a JSON object::

    {"kind": ..., "model": ..., "inputs": {...}, "verdict": ..., "witness": {...}, "notes": ...}

Replaying re-runs the verifier on the decoded inputs and compares the
verdict and the serialized witness with the stored ones, bit for bit.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import configurations as cf
from . import moulton as mo
from .serialize import element_to_json, flat_from_json

ROLES = {
    "desargues_planar": ("A", "B", "C", "A'", "B'", "C'", "S"),
    "desargues_spatial": ("A", "B", "C", "A'", "B'", "C'"),
    "pappus": ("A", "B", "C", "A'", "B'", "C'"),
    "brianchon": ("a", "b", "c", "a'", "b'", "c'"),
    "gallucci": cf.GALLUCCI_ROLES,
}


def _run(kind: str, elements: list) -> cf.Verdict:
    if kind == "desargues_planar":
        return cf.check_desargues_planar(*elements)
    if kind == "desargues_spatial":
        return cf.check_desargues_spatial(elements[:3], elements[3:])
    if kind == "pappus":
        return cf.check_pappus(*elements)
    if kind == "brianchon":
        return cf.check_pappus_brianchon(*elements)
    if kind == "gallucci":
        return cf.check_gallucci(cf.make_gallucci_input(**dict(zip(cf.GALLUCCI_ROLES, elements))))
    raise ValueError(f"unknown witness kind {kind!r}")


def verdict_record(kind: str, model: str, elements, verdict: cf.Verdict) -> dict:
    roles = ROLES[kind]
    if len(elements) != len(roles):
        raise ValueError(f"{kind} needs {len(roles)} inputs")
    return {
        "kind": kind,
        "model": model,
        "inputs": {r: element_to_json(x) for r, x in zip(roles, elements)},
        "verdict": verdict.status,
        "witness": {k: element_to_json(v) for k, v in verdict.witness.items()},
        "notes": verdict.notes,
    }


def make_record(kind: str, model: str, elements) -> dict:
    """Run the verifier and package inputs, verdict and witness."""
    return verdict_record(kind, model, list(elements), _run(kind, list(elements)))


def audit_record(model_spec: str, result) -> dict:
    d = result.to_dict()
    return {"kind": "audit", "model": model_spec, "axiom": d["axiom"], "verdict": d["status"],
            "witness": d["witness"], "coverage": d["coverage"], "seed": d["seed"]}


def _decode(kind: str, model: str, data: Any):
    if model == "moulton":
        if kind == "brianchon":
            return mo.parse_line(data)
        return mo.parse_point(data)
    el = flat_from_json(data)
    if el.ring.tag != model:
        raise ValueError(f"element ring {el.ring.tag} does not match model {model}")
    return el


def recheck(record: dict) -> dict:
    """Replay a record; ``ok`` is true iff verdict and witness reproduce."""
    kind = record.get("kind")
    try:
        if kind == "audit":
            return _recheck_audit(record)
        roles = ROLES[kind]
        model = record["model"]
        elements = [_decode(kind, model, record["inputs"][r]) for r in roles]
        v = _run(kind, elements)
    except (KeyError, ValueError, TypeError, AssertionError) as exc:
        return {"ok": False, "reason": f"replay error: {exc}"}
    replay = {k: element_to_json(x) for k, x in v.witness.items()}
    same_status = v.status == record.get("verdict")
    same_witness = replay == record.get("witness")
    out = {"ok": same_status and same_witness, "stored": record.get("verdict"), "replayed": v.status,
           "witness_match": same_witness}
    if not out["ok"]:
        out["reason"] = "verdict differs" if not same_status else "witness differs"
    return out


def _recheck_audit(record: dict) -> dict:
    from .models import model_from_spec

    model = model_from_spec(record["model"])
    if record.get("verdict") != "fail":
        return {"ok": False, "reason": "only failures carry a replayable witness"}
    ok = model.recheck(record["axiom"], record["witness"])
    return {"ok": ok, "stored": "fail", "replayed": "fail" if ok else "not reproduced",
            "witness_match": ok}


def records_in(data: Any) -> list[dict]:
    """Every failure record nested anywhere inside a report."""
    if isinstance(data, dict):
        if data.get("kind") in ROLES or data.get("kind") == "audit":
            return [data] if data.get("verdict") in (cf.FAILS, "fail") else []
        return [r for v in data.values() for r in records_in(v)]
    if isinstance(data, list):
        return [r for v in data for r in records_in(v)]
    return []


def save(record: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(record, indent=2) + "\n")


def load(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())
