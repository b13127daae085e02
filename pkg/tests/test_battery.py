from __future__ import annotations

from random import Random

import pytest

from projgeom import battery as bt
from projgeom import configurations as cf
from projgeom import sampling as sm
from projgeom.scalars import gf


def _suites(report):
    return {s["suite"]: s for s in report["suites"]}


def test_gf3_exhaustive_battery():
    report = bt.run_battery("gf:3", 10, 1729, exhaustive=True)
    assert report["consistent"]
    suites = _suites(report)
    assert suites["pappus"]["trials"] == 10 + 13 * 12 * 36
    assert suites["gallucci"]["agreement"]["exhaustive_audit"] == {"agree": 1, "of": 1}
    assert all(s["fails"] == 0 and s["degenerate"] == 0 for s in suites.values())


def test_gf2_battery_skips_what_does_not_fit():
    report = bt.run_battery("gf:2", 10, 1)
    assert report["consistent"]
    assert set(_suites(report)) == {"desargues_spatial", "gallucci"}


def test_quaternion_battery_finds_failures():
    report = bt.run_battery("quaternion", 10, 1729)
    assert report["consistent"]
    suites = _suites(report)
    assert suites["desargues_planar"]["fails"] == 0
    assert suites["pappus"]["fails"] > 0 and suites["gallucci"]["fails"] > 0
    transport = suites["pappus_gallucci_transport"]
    assert set(transport["witness"]) == {"pappus", "gallucci"}
    assert transport["witness_rechecked"]


def test_moulton_battery():
    report = bt.run_battery("moulton", 30, 1729)
    (suite,) = report["suites"]
    assert report["consistent"] and suite["fails"] > 0 and suite["witness_rechecked"]


def test_battery_is_deterministic():
    assert bt.run_battery("gf:5", 5, 9) == bt.run_battery("gf:5", 5, 9)


def test_expectation_flags_a_missing_counterexample():
    t = bt.Tally("pappus")
    t.add(cf.Verdict(cf.HOLDS))
    from projgeom.scalars import QUATERNION

    assert not bt._summarize("quaternion", QUATERNION, [t])["consistent"]


def test_samplers_refuse_too_small_fields():
    for make in (sm.desargues_planar, sm.pappus_sextuple, sm.brianchon_sextuple, sm.gallucci_input):
        with pytest.raises(ValueError):
            make(gf(2), Random(0))
