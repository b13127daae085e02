from __future__ import annotations

import json
from random import Random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from projgeom import collineations as co
from projgeom import projectivities as pj
from projgeom import sampling as sm
from projgeom import serialize as se
from projgeom import witnesses as wt
from projgeom.scalars import QUATERNION, RATIONAL, gf

from conftest import GF5, line, pt


@given(st.sampled_from([gf(3), RATIONAL, QUATERNION]), st.integers(0, 10 ** 6), st.integers(1, 3))
def test_flat_round_trip(ring, seed, rank):
    rng = Random(seed)
    f = line(ring, *[[ring.random(rng, 3) for _ in range(4)] for _ in range(rank)])
    data = json.loads(json.dumps(se.flat_to_json(f)))
    assert se.flat_from_json(data) == f
    assert data["rank"] == f.rank and data["ring"] == ring.tag


def test_flat_json_rejects_wrong_rank():
    data = se.flat_to_json(pt(GF5, 1, 2, 3, 4))
    data["rank"] = 2
    with pytest.raises(ValueError):
        se.flat_from_json(data)


def test_chain_and_axial_round_trip():
    rng = Random(3)
    chain = pj.random_chain(GF5, rng, 3)
    assert se.chain_from_json(se.chain_to_json(chain)) == chain
    red = pj.reduce_chain(chain)
    if isinstance(red, pj.AxialPerspectivity):
        assert se.axial_from_json(se.axial_to_json(red)) == red
    with pytest.raises(ValueError):
        se.chain_from_json({"links": []})


def test_collineation_round_trip():
    rng = Random(4)
    src, dst = co.random_general_quadruple(GF5, rng), co.random_general_quadruple(GF5, rng)
    for k in co.decompose_four_points(src, dst):
        assert se.collineation_from_json(se.collineation_to_json(k)) == k


def _quaternion_pappus_record():
    res = sm.find_quaternion_pappus_failure()
    return wt.make_record("pappus", "quaternion", res.config)


def test_record_replays():
    rec = _quaternion_pappus_record()
    assert rec["verdict"] == "fails"
    out = wt.recheck(json.loads(json.dumps(rec)))
    assert out["ok"] and out["witness_match"]


def test_tampered_witness_is_a_mismatch():
    rec = _quaternion_pappus_record()
    bad = json.loads(json.dumps(rec))
    bad["witness"]["A''"], bad["witness"]["B''"] = bad["witness"]["B''"], bad["witness"]["A''"]
    out = wt.recheck(bad)
    assert not out["ok"] and out["reason"] == "witness differs"
    bad = json.loads(json.dumps(rec))
    bad["verdict"] = "holds"
    assert wt.recheck(bad)["reason"] == "verdict differs"


def test_tampered_inputs_and_model_are_rejected():
    rec = _quaternion_pappus_record()
    bad = json.loads(json.dumps(rec))
    bad["model"] = "rational"
    assert not wt.recheck(bad)["ok"]
    bad = json.loads(json.dumps(rec))
    bad["inputs"]["A"]["rows"][0][1] = "7"
    assert not wt.recheck(bad)["ok"]


def test_moulton_record_round_trip():
    res = sm.find_moulton_desargues_failure()
    rec = wt.verdict_record("desargues_planar", "moulton", list(res.config), res.verdict)
    assert wt.recheck(json.loads(json.dumps(rec)))["ok"]


def test_save_load(tmp_path):
    rec = _quaternion_pappus_record()
    wt.save(rec, tmp_path / "w.json")
    assert wt.load(tmp_path / "w.json") == json.loads(json.dumps(rec))


def test_records_in_finds_nested_failures():
    rec = _quaternion_pappus_record()
    report = {"suites": [{"witness": {"pappus": rec, "other": {"kind": "pappus", "verdict": "holds"}}}]}
    assert wt.records_in(report) == [rec]
