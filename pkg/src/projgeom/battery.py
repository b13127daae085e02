"""Theorem batteries: run every configuration verifier on seeded samples
and compare the results with what the model's coordinate ring predicts.

Commutative fields must give ``holds`` everywhere.  The quaternions must
keep Desargues but produce Pappus and Gallucci failures, and each Pappus
failure must lift to a Gallucci failure.  The Moulton plane must produce a
Desargues failure.
"""
from __future__ import annotations

from random import Random
from typing import Any

from . import configurations as cf
from . import flats as fl
from . import sampling as sm
from .flats import DegenerateError, incident, join
from .scalars import Ring, ring_from_tag
from .witnesses import make_record, recheck, records_in, verdict_record


class Tally:
    def __init__(self, name: str):
        self.name = name
        self.trials = 0
        self.counts = {cf.HOLDS: 0, cf.FAILS: 0, cf.DEGENERATE: 0}
        self.first_failure: dict | None = None
        self.degenerate_notes: list[str] = []
        self.agreement: dict[str, list[int]] = {}

    def add(self, verdict: cf.Verdict, record=None):
        self.trials += 1
        self.counts[verdict.status] += 1
        if verdict.fails and self.first_failure is None and record is not None:
            self.first_failure = record()
        if verdict.degenerate and len(self.degenerate_notes) < 5:
            self.degenerate_notes.append(verdict.notes)

    def agree(self, name: str, same: bool):
        pair = self.agreement.setdefault(name, [0, 0])
        pair[0] += int(same)
        pair[1] += 1

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"suite": self.name, "trials": self.trials}
        d.update(self.counts)
        if self.agreement:
            d["agreement"] = {k: {"agree": a, "of": n} for k, (a, n) in self.agreement.items()}
        if self.degenerate_notes:
            d["degenerate_notes"] = self.degenerate_notes
        if self.first_failure is not None:
            d["witness"] = self.first_failure
        return d


def desargues_lift(config, rng: Random, height: int = 4, tries: int = 200):
    """Embed a planar Desargues configuration in x4 = 0 and pick the lift
    point and the auxiliary point D for the spatial construction."""
    pts = [cf._embed(P) for P in config]
    A, B, C, A2, B2, C2, S = pts
    ring = A.ring
    for _ in range(tries):
        lift = fl.random_point(ring, rng, 4, height)
        if lift.coords[3] == ring.zero:
            continue
        gamma = join(join(S, lift), join(C, C2))
        D = fl.random_point_on(gamma, rng, height)
        if incident(D, join(S, lift)) or incident(D, join(C, C2)):
            continue
        return pts, lift, D
    raise DegenerateError("no lift found")


def _dual_pappus(lines):
    """Points dual to the six lines of a Brianchon configuration."""
    return [fl.dual(l) for l in lines]


def run_ring_battery(ring: Ring, trials: int, seed: int, height: int = 4,
                     exhaustive: bool = False) -> dict:
    tag = ring.tag
    rng = Random(seed)
    suites = []
    small = ring.finite and ring.order < 3

    t = Tally("desargues_planar")
    for _ in range(0 if small else trials):
        config = sm.desargues_planar(ring, rng, height)
        v = cf.check_desargues_planar(*config)
        t.add(v, lambda: make_record("desargues_planar", tag, config))
        try:
            pts, lift, D = desargues_lift(config, rng, height)
            t.agree("spatial_construction", cf.desargues_via_space(*pts, lift, D).status == v.status)
        except DegenerateError:
            pass
    if not small:
        suites.append(t)

    t = Tally("desargues_spatial")
    for n in range(trials):
        T1, T2 = sm.desargues_spatial(ring, rng, height, perspective=(n % 2 == 0))
        v = cf.check_desargues_spatial(T1, T2)
        t.add(v, lambda: make_record("desargues_spatial", tag, list(T1) + list(T2)))
    suites.append(t)

    if not small:
        t = Tally("pappus")
        for _ in range(trials):
            six = sm.pappus_sextuple(ring, rng, height)
            t.add(cf.check_pappus(*six), lambda: make_record("pappus", tag, six))
        if exhaustive and ring.finite:
            for six in sm.pappus_exhaustive(ring, fixed_lines=ring.order > 3):
                t.add(cf.check_pappus(*six), lambda: make_record("pappus", tag, six))
        suites.append(t)

        t = Tally("pappus_brianchon")
        for _ in range(trials):
            six = sm.brianchon_sextuple(ring, rng, height)
            v = cf.check_pappus_brianchon(*six)
            t.add(v, lambda: make_record("brianchon", tag, six))
            if ring.commutative:
                t.agree("dual_pappus", cf.check_pappus(*_dual_pappus(six)).status == v.status)
        suites.append(t)

    t = Tally("gallucci")
    for _ in range(0 if small else trials):
        gi = sm.gallucci_input(ring, rng, height)
        t.add(cf.check_gallucci(gi), lambda: make_record("gallucci", tag, list(gi.lines().values())))
    if exhaustive and ring.finite and ring.order <= 3:
        from .models import build_pg3

        res = build_pg3(ring).check("G", 0, seed, True)
        t.agree("exhaustive_audit", res.status == "pass")
    suites.append(t)

    if not small:
        t = Tally("pappus_gallucci_transport")
        lifted_failure = None
        for _ in range(trials):
            six = sm.pappus_sextuple(ring, rng, height)
            vp = cf.check_pappus(*six)
            try:
                P, Q = sm.lift_parameters(six, rng, height)
            except DegenerateError:
                continue
            gi = cf.gallucci_from_pappus_config(six, P, Q)
            vg = cf.check_gallucci(gi)
            vs = cf.pappus_from_gallucci_config(six, P, Q)
            t.add(vg)
            t.agree("gallucci_vs_pappus", vg.status == vp.status)
            t.agree("spatial_pappus_vs_pappus", vs.status == vp.status)
            if vp.fails and lifted_failure is None:
                # the planar failure and its lift, from the same trial
                lifted_failure = {"pappus": make_record("pappus", tag, six),
                                  "gallucci": make_record("gallucci", tag, list(gi.lines().values()))}
        t.first_failure = lifted_failure
        suites.append(t)

    return _summarize(tag, ring, suites)


def _expected(ring: Ring | None, suite: str) -> str:
    """``holds`` (no failure allowed) or ``failure`` (at least one needed)."""
    if ring is None:  # Moulton plane
        return "failure"
    if ring.commutative:
        return "holds"
    return "holds" if suite.startswith("desargues") else "failure"


def _summarize(tag: str, ring: Ring | None, suites: list[Tally]) -> dict:
    results = []
    consistent = True
    for t in suites:
        d = t.to_dict()
        expect = _expected(ring, t.name)
        ok = d[cf.DEGENERATE] == 0
        if expect == "holds":
            ok = ok and d[cf.FAILS] == 0
        else:
            ok = ok and d[cf.FAILS] > 0
        for a, n in t.agreement.values():
            ok = ok and a == n
        if t.first_failure is not None:
            replays = [recheck(r)["ok"] for r in records_in(t.first_failure)]
            d["witness_rechecked"] = all(replays)
            ok = ok and all(replays)
        d["expected"] = expect
        d["consistent"] = ok
        consistent = consistent and ok
        results.append(d)
    return {"model": tag, "suites": results, "consistent": consistent}


def run_moulton_battery(trials: int, seed: int, height: int = 4) -> dict:
    rng = Random(seed)
    t = Tally("desargues_planar")
    for _ in range(trials):
        config = sm.moulton_desargues(rng, height)
        v = cf.check_desargues_planar(*config)
        t.add(v, lambda: verdict_record("desargues_planar", "moulton", list(config), v))
    return _summarize("moulton", None, [t])


def run_battery(model: str, trials: int, seed: int, height: int = 4, exhaustive: bool = False) -> dict:
    if model == "moulton":
        return run_moulton_battery(trials, seed, height)
    return run_ring_battery(ring_from_tag(model), trials, seed, height, exhaustive)
