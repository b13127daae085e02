from __future__ import annotations

from itertools import product
from pathlib import Path

import pytest

from projgeom import models as md
from projgeom.scalars import RATIONAL, gf

DATA = Path(__file__).parent / "data"


def _brute_counts(p):
    """Count subspaces of GF(p)^4 by listing their point sets directly."""
    vecs = [v for v in product(range(p), repeat=4) if any(v)]

    def normal(v):
        inv = pow(next(x for x in v if x), -1, p)
        return tuple(x * inv % p for x in v)

    pts = {normal(v) for v in vecs}
    lines = set()
    for a in pts:
        for b in pts:
            if a < b:
                lines.add(frozenset(normal(tuple((s * x + t * y) % p for x, y in zip(a, b)))
                                    for s in range(p) for t in range(p) if (s, t) != (0, 0)))
    return len(pts), len(lines)


@pytest.mark.parametrize("p", [2, 3])
def test_pg3_counts(p):
    model = md.build_pg3(gf(p))
    counts = model.counts()
    assert counts == md.expected_counts(p)
    assert (counts["points"], counts["lines"]) == _brute_counts(p)
    assert counts["planes"] == counts["points"]


def test_pg3_literal_counts():
    assert md.build_pg3(gf(2)).counts() == {"points": 15, "lines": 35, "planes": 15}
    assert md.build_pg3(gf(3)).counts() == {"points": 40, "lines": 130, "planes": 40}


def test_infinite_rings_are_sampled_only():
    with pytest.raises(ValueError):
        md.build_pg3(RATIONAL, enumerate=True)
    assert not md.build_pg3(RATIONAL, enumerate=False).finite


def test_pg32_space_axioms_exhaustive():
    model = md.build_pg3(gf(2))
    for s in ("S", "G", "VY"):
        for r in md.audit(model, s):
            assert (r.axiom, r.status, r.coverage) == (r.axiom, md.PASS, "exhaustive")


def test_pg22_and_fano_plane_axioms():
    fano = md.load_abstract_model(DATA / "fano.txt")
    assert fano.counts() == {"points": 7, "lines": 7, "planes": 0}
    for model in (fano, md.build_pg2(gf(3))):
        for r in md.audit(model, "P") + md.audit(model, "VY"):
            assert r.status == (md.SKIPPED if r.axiom in ("A7", "A8") else md.PASS)


def test_two_lines_through_two_points_breaks_p1():
    model = md.parse_abstract_model("points:\na b c d\nlines:\nl1: a b\nl2: a b c\nl3: c d\n")
    r = md.audit(model, "P")[0]
    assert r.axiom == "P1" and r.status == md.FAIL
    assert r.witness == ["a", "b", "l1", "l2"]
    assert model.recheck("P1", r.witness)
    assert not model.recheck("P1", ["a", "b", "l1", "l3"])


@pytest.mark.parametrize("text, message", [
    ("", "empty"),
    ("# only a comment\n", "empty"),
    ("lines:\nl: a b\n", "points"),
    ("points:\na b\nlines:\nl: a z\n", "unknown point"),
    ("points:\na b a\n", "duplicate"),
    ("points:\na b\nlines:\na: a b\n", "duplicate"),
    ("points:\na b\nlines:\nl: a\n", "fewer than two"),
    ("points:\na b c\nlines:\nl: a b\nplanes:\ne: l q\n", "unknown point or line"),
    ("a b\n", "before any section"),
])
def test_model_file_errors(text, message):
    with pytest.raises(md.ModelFormatError, match=message):
        md.parse_abstract_model(text)


def test_element_cap():
    text = "points:\n" + " ".join(f"p{i}" for i in range(20)) + "\n"
    with pytest.raises(md.ModelFormatError, match="cap"):
        md.parse_abstract_model(text, max_elements=10)


def test_inapplicable_axiom_sets():
    with pytest.raises(ValueError):
        md.audit(md.MoultonPlane(), "S")
    with pytest.raises(ValueError):
        md.audit(md.build_pg3(gf(2)), "P")
    with pytest.raises(ValueError):
        md.audit(md.build_pg3(gf(2)), "X")


def test_moulton_plane_axioms_sampled():
    for r in md.audit(md.MoultonPlane(), "P", budget=2000, seed=7):
        assert r.status == md.PASS
        assert r.coverage in ("sampled(2000)", "constructive")


def test_audit_is_deterministic():
    a = [r.to_dict() for r in md.audit(md.CoordinateSpace(RATIONAL), "S", budget=50, seed=3)]
    b = [r.to_dict() for r in md.audit(md.CoordinateSpace(RATIONAL), "S", budget=50, seed=3)]
    assert a == b


def test_quaternion_space_is_not_pappian():
    model = md.model_from_spec("quaternion")
    for r in md.audit(model, "S", budget=40):
        assert r.status == md.PASS
    (g,) = md.audit(model, "G", budget=200)
    assert g.status == md.FAIL
    assert model.recheck("G", g.to_dict()["witness"])
    tampered = list(g.to_dict()["witness"])
    tampered[6], tampered[7] = tampered[7], tampered[6]
    assert not model.recheck("G", tampered)


def test_rational_space_satisfies_g_sampled():
    (g,) = md.audit(md.model_from_spec("rational"), "G", budget=30)
    assert g.status == md.PASS


def test_model_specs():
    assert md.model_from_spec("gf:2").tag == "pg3:gf:2"
    assert md.model_from_spec("moulton").kind == "plane"
    assert md.model_from_spec(f"file:{DATA / 'fano.txt'}").kind == "plane"
    with pytest.raises(ValueError):
        md.model_from_spec("gf:4")
