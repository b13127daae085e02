"""Incidence models and axiom audits.

Three kinds of model are supported:

* :class:`FiniteIncidenceStructure` -- points, lines and (optionally) planes
  given as explicit point sets, either loaded from a file or enumerated from
  PG(2, p) / PG(3, p).  Audits run over every tuple when the count fits the
  exhaustive limit and over seeded random tuples otherwise.
* :class:`CoordinateSpace` -- PG(3, K) over any supported ring, audited by
  seeded sampling with exact join/meet.
* :class:`MoultonPlane` -- the Moulton plane, audited by seeded sampling.

Axiom ids: P1-P3 (planes), S1-S8 (spaces), A1-A8 (the line/point
assumptions, A7 and A8 only where planes exist) and G (transversals of
three skew lines).  Every failure carries a witness whose first
``arity`` entries are the checked tuple; re-evaluating that tuple must give
back the same witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, islice
from math import comb
from pathlib import Path
from random import Random
from typing import Callable, Iterable, Iterator, Sequence

from . import configurations as cf
from . import flats as fl
from . import moulton as mo
from .flats import DegenerateError, Flat, enumerate_flats, incident, join, meet, points_of
from .scalars import Ring
from .serialize import element_to_json, flat_from_json, moulton_line_from_json, moulton_point_from_json

DEFAULT_SEED = 1729
DEFAULT_BUDGET = 10_000
EXHAUSTIVE_LIMIT = 2_000_000
MAX_ELEMENTS = 100_000

AXIOM_SETS = {
    "P": ("P1", "P2", "P3"),
    "S": ("S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8"),
    "VY": ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"),
    "G": ("G",),
}
PLANE_SETS = ("P", "VY")
SPACE_SETS = ("S", "G", "VY")

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class AuditResult:
    axiom: str
    status: str
    witness: list = field(default_factory=list)
    coverage: str = "exhaustive"
    seed: int | None = None
    checked: int = 0

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "status": self.status,
            "witness": element_to_json(self.witness),
            "coverage": self.coverage,
            "seed": self.seed,
            "checked": self.checked,
        }


def axiom_rng(seed: int, axiom: str) -> Random:
    return Random(f"{seed}:{axiom}")


class IncidenceModel:
    """Common audit driver; subclasses supply tuples and violation tests."""

    tag = "model"
    kind = "space"
    finite = False
    has_planes = True

    # forall-axioms map to (arity, violation); existence axioms take no tuple
    def _violation(self, axiom: str) -> Callable | None:
        return getattr(self, "_v_" + axiom, None)

    def arity(self, axiom: str) -> int:
        raise NotImplementedError

    def applicable_sets(self) -> tuple[str, ...]:
        return SPACE_SETS if self.kind == "space" else PLANE_SETS

    def supports(self, axiom: str) -> bool:
        if axiom in ("A7", "A8"):
            return self.has_planes
        return True

    def exhaustive_tuples(self, axiom: str) -> tuple[int, Iterator[tuple]] | None:
        return None

    def sample_tuple(self, axiom: str, rng: Random) -> tuple:
        raise NotImplementedError

    def encode(self, witness: Sequence) -> list:
        return list(witness)

    def decode(self, axiom: str, witness: Sequence) -> tuple:
        return tuple(witness)

    def check(self, axiom: str, budget: int, seed: int, exhaustive: bool | None,
              limit: int = EXHAUSTIVE_LIMIT) -> AuditResult:
        if not self.supports(axiom):
            return AuditResult(axiom, SKIPPED, coverage="none", seed=seed)
        violation = self._violation(axiom)
        if self.arity(axiom) == 0:
            w = violation(())
            cov = "exhaustive" if self.finite else "constructive"
            return AuditResult(axiom, FAIL if w is not None else PASS,
                               self.encode(w or []), cov, seed, 1)
        plan = self.exhaustive_tuples(axiom) if self.finite else None
        if plan is not None and exhaustive is not False:
            count, tuples = plan
            if exhaustive or count <= limit:
                n = 0
                for t in tuples:
                    n += 1
                    w = violation(t)
                    if w is not None:
                        return AuditResult(axiom, FAIL, self.encode(w), "exhaustive", seed, n)
                return AuditResult(axiom, PASS, [], "exhaustive", seed, n)
        rng = axiom_rng(seed, axiom)
        for n in range(1, budget + 1):
            t = self.sample_tuple(axiom, rng)
            w = violation(t)
            if w is not None:
                return AuditResult(axiom, FAIL, self.encode(w), f"sampled({budget})", seed, n)
        return AuditResult(axiom, PASS, [], f"sampled({budget})", seed, budget)

    def recheck(self, axiom: str, witness: Sequence) -> bool:
        """True iff the stored failure witness reproduces exactly."""
        violation = self._violation(axiom)
        k = self.arity(axiom)
        try:
            elements = self.decode(axiom, witness)
            w = violation(tuple(elements[:k]))
        except (ValueError, KeyError, IndexError, TypeError, DegenerateError, AssertionError):
            return False
        return w is not None and element_to_json(self.encode(w)) == element_to_json(list(witness))


def audit(model: IncidenceModel, axiom_set: str, budget: int = DEFAULT_BUDGET,
          seed: int = DEFAULT_SEED, exhaustive: bool | None = None,
          limit: int = EXHAUSTIVE_LIMIT) -> list[AuditResult]:
    """Audit one axiom set (``P``, ``S``, ``VY`` or ``G``) on a model."""
    if axiom_set not in AXIOM_SETS:
        raise ValueError(f"unknown axiom set {axiom_set!r}")
    if axiom_set not in model.applicable_sets():
        raise ValueError(f"axiom set {axiom_set} does not apply to a {model.kind} model")
    return [model.check(a, budget, seed, exhaustive, limit) for a in AXIOM_SETS[axiom_set]]


# -- finite structures ------------------------------------------------------

def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteIncidenceStructure(IncidenceModel):
    """Points, lines and planes as explicit point sets (bitmasks)."""

    finite = True

    _ARITY = {"P1": 2, "P2": 2, "P3": 0, "S1": 2, "S2": 2, "S3": 3, "S4": 3, "S5": 2,
              "S6": 2, "S7": 1, "S8": 0, "A1": 2, "A2": 2, "A3": 5, "A4": 1, "A5": 0,
              "A6": 0, "A7": 0, "A8": 3, "G": 3}
    # element type of each tuple slot: point, line or plane
    _SLOTS = {"P1": "pp", "P2": "ll", "S1": "pp", "S2": "ee", "S3": "ppp", "S4": "eee",
              "S5": "le", "S6": "lp", "S7": "e", "A1": "pp", "A2": "pp", "A3": "ppppp",
              "A4": "l", "A8": "epp", "G": "lll"}

    def __init__(self, point_ids: Sequence[str], lines: dict[str, Iterable[int]],
                 planes: dict[str, Iterable[int]] | None = None, tag: str = "abstract"):
        self.tag = tag
        self.point_ids = list(point_ids)
        self.line_ids = list(lines)
        self.plane_ids = list(planes) if planes else []
        self.has_planes = bool(planes)
        self.kind = "space" if self.has_planes else "plane"
        self.line_masks = [self._mask(v) for v in lines.values()]
        self.plane_masks = [self._mask(v) for v in planes.values()] if planes else []
        self.all_points = (1 << len(self.point_ids)) - 1
        n = len(self.point_ids)
        self.pair_lines: dict[tuple[int, int], list[int]] = {}
        self.point_lines: list[list[int]] = [[] for _ in range(n)]
        for li, m in enumerate(self.line_masks):
            pts = list(_bits(m))
            for p in pts:
                self.point_lines[p].append(li)
            for p, q in combinations(pts, 2):
                self.pair_lines.setdefault((p, q), []).append(li)
        self.meets = [0] * len(self.line_masks)
        for li, m in enumerate(self.line_masks):
            acc = 0
            for p in _bits(m):
                for lj in self.point_lines[p]:
                    acc |= 1 << lj
            self.meets[li] = acc & ~(1 << li)
        self._index = {("p", x): i for i, x in enumerate(self.point_ids)}
        self._index.update({("l", x): i for i, x in enumerate(self.line_ids)})
        self._index.update({("e", x): i for i, x in enumerate(self.plane_ids)})

    @staticmethod
    def _mask(members: Iterable[int]) -> int:
        m = 0
        for i in members:
            m |= 1 << i
        return m

    def counts(self) -> dict:
        return {"points": len(self.point_ids), "lines": len(self.line_ids), "planes": len(self.plane_ids)}

    def arity(self, axiom: str) -> int:
        return self._ARITY[axiom]

    # -- element naming --

    def _name(self, slot: str, i: int) -> str:
        return {"p": self.point_ids, "l": self.line_ids, "e": self.plane_ids}[slot][i]

    def encode(self, witness):
        return [self._name(s, i) for s, i in witness]

    def decode(self, axiom, witness):
        return tuple((s, self._index[(s, x)]) for s, x in zip(self._SLOTS[axiom], witness))

    def _tag(self, axiom: str, t: Sequence[int]):
        return tuple(zip(self._SLOTS[axiom], t))

    # -- helpers --

    def lines_through(self, p: int, q: int) -> list[int]:
        return self.pair_lines.get((min(p, q), max(p, q)), [])

    def collinear(self, pts: Sequence[int]) -> bool:
        pts = list(dict.fromkeys(pts))
        if len(pts) <= 2:
            return True
        m = self._mask(pts)
        return any(self.line_masks[l] & m == m for l in self.lines_through(pts[0], pts[1]))

    def lines_in(self, mask: int) -> list[int]:
        return [l for l, m in enumerate(self.line_masks) if m & mask == m]

    def planes_containing(self, mask: int) -> list[int]:
        return [e for e, m in enumerate(self.plane_masks) if m & mask == mask]

    def _frame(self, mask: int, size: int = 4) -> tuple[int, ...] | None:
        pts = list(_bits(mask))
        for quad in combinations(pts, size):
            if not any(self.collinear(t) for t in combinations(quad, 3)):
                return quad
        return None

    def _skew(self, a: int, b: int) -> bool:
        if a == b or (self.meets[a] >> b) & 1:
            return False
        if self.has_planes and self.planes_containing(self.line_masks[a] | self.line_masks[b]):
            return False
        return True

    # -- violations (None when the tuple satisfies the axiom) --

    def _unique_line(self, axiom, t):
        p, q = (i for _, i in t)
        ls = self.lines_through(p, q)
        return None if len(ls) == 1 else list(t) + [("l", l) for l in ls]

    def _v_P1(self, t):
        return self._unique_line("P1", t)

    _v_S1 = _v_P1

    def _v_A1(self, t):
        p, q = (i for _, i in t)
        return None if self.lines_through(p, q) else list(t)

    def _v_A2(self, t):
        p, q = (i for _, i in t)
        ls = self.lines_through(p, q)
        return None if len(ls) <= 1 else list(t) + [("l", l) for l in ls]

    def _v_P2(self, t):
        a, b = (i for _, i in t)
        common = list(_bits(self.line_masks[a] & self.line_masks[b]))
        return None if len(common) == 1 else list(t) + [("p", p) for p in common]

    def _v_P3(self, t):
        return None if self._frame(self.all_points) else []

    def _v_S2(self, t):
        a, b = (i for _, i in t)
        ls = self.lines_in(self.plane_masks[a] & self.plane_masks[b])
        return None if len(ls) == 1 else list(t) + [("l", l) for l in ls]

    def _v_S3(self, t):
        pts = [i for _, i in t]
        if self.collinear(pts):
            return None
        es = self.planes_containing(self._mask(pts))
        return None if len(es) == 1 else list(t) + [("e", e) for e in es]

    def _v_S4(self, t):
        common = self.all_points
        for _, e in t:
            common &= self.plane_masks[e]
        if self.lines_in(common):
            return None
        pts = list(_bits(common))
        return None if len(pts) == 1 else list(t) + [("p", p) for p in pts]

    def _v_S5(self, t):
        (_, l), (_, e) = t
        lm, em = self.line_masks[l], self.plane_masks[e]
        if bin(lm & em).count("1") >= 2 and lm & em != lm:
            return list(t) + [("p", p) for p in _bits(lm & ~em)][:1]
        return None

    def _v_S6(self, t):
        (_, l), (_, p) = t
        through = self.planes_containing(self.line_masks[l])
        with_p = [e for e in through if (self.plane_masks[e] >> p) & 1]
        if len(with_p) >= 2 and len(with_p) != len(through):
            return list(t) + [("e", e) for e in through if e not in with_p][:1]
        return None

    def _v_S7(self, t):
        (_, e), = t
        return None if self._frame(self.plane_masks[e]) else list(t)

    def _v_S8(self, t):
        pts = range(len(self.point_ids))
        coplanar = {}

        def cop(q):
            if q not in coplanar:
                coplanar[q] = bool(self.planes_containing(self._mask(q)))
            return coplanar[q]

        for five in combinations(pts, 5):
            if not any(cop(q) for q in combinations(five, 4)):
                return None
        return []

    def _v_A3(self, t):
        A, B, C, D, E = (i for _, i in t)
        if len({A, B, C}) < 3 or D == E or self.collinear([A, B, C]):
            return None
        if not self.collinear([B, C, D]) or not self.collinear([C, A, E]):
            return None
        for l1 in self.lines_through(A, B):
            for l2 in self.lines_through(D, E):
                if self.line_masks[l1] & self.line_masks[l2]:
                    return None
        return list(t)

    def _v_A4(self, t):
        (_, l), = t
        return None if bin(self.line_masks[l]).count("1") >= 3 else list(t)

    def _v_A5(self, t):
        return None if self.line_masks else []

    def _v_A6(self, t):
        return None if all(m != self.all_points for m in self.line_masks) else []

    def _v_A7(self, t):
        return None if all(m != self.all_points for m in self.plane_masks) else []

    def _v_A8(self, t):
        (_, e), (_, P), (_, X) = t
        em = self.plane_masks[e]
        if (em >> P) & 1 or (em >> X) & 1 or P == X:
            return None
        if any(self.line_masks[l] & em for l in self.lines_through(P, X)):
            return None
        return list(t)

    def _v_G(self, t):
        a, b, c = (i for _, i in t)
        if not (self._skew(a, b) and self._skew(a, c) and self._skew(b, c)):
            return None
        first = self.meets[a] & self.meets[b] & self.meets[c]
        family = list(_bits(first))
        for e, f, g in combinations(family, 3):
            if not (self._skew(e, f) and self._skew(e, g) and self._skew(f, g)):
                continue
            second = self.meets[e] & self.meets[f] & self.meets[g]
            for h in family:
                bad = second & ~self.meets[h] & ~(1 << h)
                if bad:
                    d = next(_bits(bad))
                    return list(t) + [("l", e), ("l", f), ("l", g), ("l", h), ("l", d)]
        return None

    # -- tuple spaces --

    def exhaustive_tuples(self, axiom):
        n, L, E = len(self.point_ids), len(self.line_ids), len(self.plane_ids)
        P, Ls, Es = range(n), range(L), range(E)
        tag = self._tag
        plans = {
            "pp": (comb(n, 2), lambda: combinations(P, 2)),
            "ll": (comb(L, 2), lambda: combinations(Ls, 2)),
            "ee": (comb(E, 2), lambda: combinations(Es, 2)),
            "ppp": (comb(n, 3), lambda: combinations(P, 3)),
            "eee": (comb(E, 3), lambda: combinations(Es, 3)),
            "le": (L * E, lambda: ((l, e) for l in Ls for e in Es)),
            "lp": (L * n, lambda: ((l, p) for l in Ls for p in P)),
            "e": (E, lambda: ((e,) for e in Es)),
            "l": (L, lambda: ((l,) for l in Ls)),
            "epp": (E * n * n, lambda: ((e, p, x) for e in Es for p in P for x in P)),
            "ppppp": (n ** 3 * max((bin(m).count("1") for m in self.line_masks), default=0) ** 2,
                      self._a3_tuples),
            "lll": (comb(L, 3), self._skew_triples),
        }
        count, gen = plans[self._SLOTS[axiom]]
        return count, (tag(axiom, t) for t in gen())

    def _a3_tuples(self):
        n = len(self.point_ids)
        for A in range(n):
            for B in range(n):
                for C in range(n):
                    if len({A, B, C}) < 3 or self.collinear([A, B, C]):
                        continue
                    Ds = set()
                    for l in self.lines_through(B, C):
                        Ds.update(_bits(self.line_masks[l]))
                    Es = set()
                    for l in self.lines_through(C, A):
                        Es.update(_bits(self.line_masks[l]))
                    for D in sorted(Ds):
                        for E in sorted(Es):
                            if D != E:
                                yield (A, B, C, D, E)

    def _skew_triples(self):
        L = len(self.line_ids)
        for a in range(L):
            for b in range(a + 1, L):
                if not self._skew(a, b):
                    continue
                for c in range(b + 1, L):
                    if self._skew(a, c) and self._skew(b, c):
                        yield (a, b, c)

    def sample_tuple(self, axiom, rng):
        n, L, E = len(self.point_ids), len(self.line_ids), len(self.plane_ids)
        slots = self._SLOTS[axiom]
        if slots == "ppppp":
            while True:
                A, B, C = rng.sample(range(n), 3)
                lbc, lca = self.lines_through(B, C), self.lines_through(C, A)
                if not lbc or not lca:
                    continue
                D = rng.choice(list(_bits(self.line_masks[rng.choice(lbc)])))
                Ex = rng.choice(list(_bits(self.line_masks[rng.choice(lca)])))
                return self._tag(axiom, (A, B, C, D, Ex))
        if slots == "lll":
            while True:
                a = rng.randrange(L)
                bs = [b for b in range(L) if self._skew(a, b)]
                if not bs:
                    continue
                b = rng.choice(bs)
                cs = [c for c in bs if self._skew(b, c)]
                if cs:
                    return self._tag(axiom, (a, b, rng.choice(cs)))
        sizes = {"p": n, "l": L, "e": E}
        if len(set(slots)) == 1 and len(slots) > 1:
            return self._tag(axiom, tuple(rng.sample(range(sizes[slots[0]]), len(slots))))
        return self._tag(axiom, tuple(rng.randrange(sizes[s]) for s in slots))


def _flat_id(f: Flat) -> str:
    return ";".join(",".join(f.ring.format(x) for x in row) for row in f.rows)


class CoordinateStructure(FiniteIncidenceStructure):
    """PG(2, p) or PG(3, p) enumerated into explicit point sets."""

    def __init__(self, ring: Ring, dim: int = 4):
        pts = enumerate_flats(ring, 1, dim)
        index = {p: i for i, p in enumerate(pts)}
        lines = {_flat_id(l): [index[p] for p in points_of(l)] for l in enumerate_flats(ring, 2, dim)}
        planes = None
        if dim == 4:
            planes = {_flat_id(e): [index[p] for p in points_of(e)] for e in enumerate_flats(ring, 3, dim)}
        name = "pg3" if dim == 4 else "pg2"
        super().__init__([_flat_id(p) for p in pts], lines, planes, tag=f"{name}:{ring.tag}")
        self.ring = ring
        self.dim = dim


def expected_counts(q: int, dim: int = 4) -> dict:
    """Counting formulas for PG(dim-1, q)."""
    if dim == 4:
        n = (q ** 4 - 1) // (q - 1)
        return {"points": n, "lines": (q * q + 1) * (q * q + q + 1), "planes": n}
    n = q * q + q + 1
    return {"points": n, "lines": n, "planes": 0}


# -- coordinatized spaces, sampled ------------------------------------------

class CoordinateSpace(IncidenceModel):
    """PG(3, K) audited by sampling with exact join and meet."""

    def __init__(self, ring: Ring, height: int = 4):
        self.ring = ring
        self.height = height
        self.tag = f"pg3:{ring.tag}"
        self.finite = False

    _ARITY = {"S1": 3, "S2": 2, "S3": 4, "S4": 3, "S5": 4, "S6": 4, "S7": 1, "S8": 0,
              "A1": 2, "A2": 3, "A3": 5, "A4": 1, "A5": 0, "A6": 0, "A7": 0, "A8": 3, "G": 8}

    def arity(self, axiom):
        return self._ARITY[axiom]

    def decode(self, axiom, witness):
        return tuple(flat_from_json(w) for w in witness)

    def _pt(self, rng, within=None):
        if within is None:
            return fl.random_point(self.ring, rng, 4, self.height)
        return fl.random_point_on(within, rng, self.height)

    def _distinct(self, rng, k, within=None):
        while True:
            pts = [self._pt(rng, within) for _ in range(k)]
            if len(set(pts)) == k:
                return pts

    def _plane(self, rng):
        while True:
            e = fl.span(*self._distinct(rng, 3))
            if e.is_plane:
                return e

    def _line(self, rng, within=None):
        return join(*self._distinct(rng, 2, within))

    def sample_tuple(self, axiom, rng):
        if axiom in ("S1", "A2"):
            P, Q = self._distinct(rng, 2)
            R = self._pt(rng, join(P, Q))
            return (P, Q, R)
        if axiom == "A1":
            return tuple(self._distinct(rng, 2))
        if axiom == "S2":
            while True:
                a, b = self._plane(rng), self._plane(rng)
                if a != b:
                    return (a, b)
        if axiom == "S3":
            while True:
                P, Q, R = self._distinct(rng, 3)
                if not fl.collinear([P, Q, R]):
                    return (P, Q, R, self._pt(rng, fl.span(P, Q, R)))
        if axiom == "S4":
            return tuple(self._plane(rng) for _ in range(3))
        if axiom == "S5":
            e = self._plane(rng)
            P, Q = self._distinct(rng, 2, e)
            return (e, P, Q, self._pt(rng, join(P, Q)))
        if axiom == "S6":
            l = self._line(rng)
            P = self._pt(rng, l) if rng.random() < 0.5 else self._pt(rng)
            return (l, P, self._pt(rng), self._pt(rng))
        if axiom in ("S7",):
            return (self._plane(rng),)
        if axiom == "A3":
            while True:
                A, B, C = self._distinct(rng, 3)
                if fl.collinear([A, B, C]):
                    continue
                D, E = self._pt(rng, join(B, C)), self._pt(rng, join(C, A))
                if D != E:
                    return (A, B, C, D, E)
        if axiom == "A4":
            return (self._line(rng),)
        if axiom == "A8":
            return (self._plane(rng), self._pt(rng), self._pt(rng))
        if axiom == "G":
            return self._gallucci_sample(rng)
        raise ValueError(axiom)

    def _gallucci_sample(self, rng):
        while True:
            a, b, c = (self._line(rng) for _ in range(3))
            if not (fl.are_skew(a, b) and fl.are_skew(a, c) and fl.are_skew(b, c)):
                continue
            try:
                pts = self._distinct(rng, 4, a)
                e, f, g, h = (cf.transversal_through(a, b, c, A) for A in pts)
                d = cf.transversal_through(e, f, g, self._pt(rng, e))
            except (ValueError, DegenerateError):
                continue
            return (a, b, c, e, f, g, h, d)

    def _v_S1(self, t):
        P, Q, R = t
        L = join(P, Q)
        if not L.is_line or not (incident(P, L) and incident(Q, L)):
            return list(t)
        if R != P and join(P, R) != L:
            return list(t)
        return None

    _v_A2 = _v_S1

    def _v_A1(self, t):
        P, Q = t
        return None if join(P, Q).is_line else list(t)

    def _v_S2(self, t):
        a, b = t
        m = meet(a, b)
        ok = m is not None and m.is_line and incident(m, a) and incident(m, b)
        return None if ok else list(t)

    def _v_S3(self, t):
        P, Q, R, X = t
        e = fl.span(P, Q, R)
        if not e.is_plane:
            return list(t)
        if not fl.collinear([P, Q, X]) and fl.span(P, Q, X) != e:
            return list(t)
        return None

    def _v_S4(self, t):
        a, b, c = t
        common = meet(a, b)
        common = meet(common, c) if common is not None else None
        if common is not None and common.rank >= 2:
            return None
        return None if common is not None and common.is_point else list(t)

    def _v_S5(self, t):
        e, P, Q, X = t
        return None if incident(X, e) else list(t)

    def _v_S6(self, t):
        l, P, R1, R2 = t
        planes = [join(l, R) for R in (R1, R2) if not incident(R, l)]
        with_p = [e for e in planes if incident(P, e)]
        if len(set(with_p)) >= 2 and len(with_p) != len(planes):
            return list(t)
        return None

    def _v_S7(self, t):
        e, = t
        # the basis rows and their sum form a frame of the plane
        rows = [list(r) for r in e.rows]
        total = [a + b + c for a, b, c in zip(*rows)]
        quad = [fl.canonicalize([v], self.ring) for v in rows + [total]]
        if all(incident(P, e) for P in quad) and not any(
                fl.collinear(list(x)) for x in combinations(quad, 3)):
            return None
        return list(t)

    def _frame5(self):
        r = self.ring
        return [fl.point(r, *v) for v in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 1))]

    def _v_S8(self, t):
        five = self._frame5()
        return None if not any(fl.coplanar(list(q)) for q in combinations(five, 4)) else []

    def _v_A3(self, t):
        A, B, C, D, E = t
        return None if meet(join(A, B), join(D, E)) is not None else list(t)

    def _v_A4(self, t):
        l, = t
        return None if len(list(islice(points_of(l), 3))) == 3 else list(t)

    def _v_A5(self, t):
        return None

    def _v_A6(self, t):
        return None if not fl.collinear(self._frame5()[:3]) else []

    def _v_A7(self, t):
        return None if not fl.coplanar(self._frame5()[:4]) else []

    def _v_A8(self, t):
        e, P, X = t
        if incident(P, e) or P == X:
            return None
        m = meet(join(P, X), e)
        return None if m is not None else list(t)

    def _v_G(self, t):
        a, b, c, e, f, g, h, d = t
        gi = cf.GallucciInput(a, b, c, e, f, g, h, d)
        if gi.problems():
            return None
        return None if fl.meets(h, d) else list(t)


# -- the Moulton plane ------------------------------------------------------

class MoultonPlane(IncidenceModel):
    tag = "moulton"
    kind = "plane"
    has_planes = False

    _ARITY = {"P1": 2, "P2": 2, "P3": 0, "A1": 2, "A2": 2, "A3": 5, "A4": 1, "A5": 0,
              "A6": 0, "A7": 0, "A8": 0}

    def __init__(self, height: int = 4):
        self.height = height

    def arity(self, axiom):
        return self._ARITY[axiom]

    def decode(self, axiom, witness):
        slots = {"P2": "ll", "A4": "l"}.get(axiom, "ppppp")
        return tuple(moulton_line_from_json(w) if s == "l" else moulton_point_from_json(w)
                     for s, w in zip(slots, witness))

    def _point(self, rng):
        roll = rng.random()
        if roll < 0.01:
            return mo.MoultonPoint.at_infinity(None)
        if roll < 0.1:
            return mo.random_point_on(mo.LINE_AT_INFINITY, rng, self.height)
        return mo.random_affine_point(rng, self.height)

    def _two_points(self, rng):
        while True:
            P, Q = self._point(rng), self._point(rng)
            if P != Q:
                return P, Q

    def sample_tuple(self, axiom, rng):
        if axiom in ("P1", "A1", "A2"):
            return self._two_points(rng)
        if axiom == "P2":
            while True:
                l, k = mo.random_line(rng, self.height), mo.random_line(rng, self.height)
                if l != k:
                    return (l, k)
        if axiom == "A3":
            while True:
                A, B, C = (mo.random_affine_point(rng, self.height) for _ in range(3))
                if len({A, B, C}) < 3 or MOULTON_GEOMETRY.collinear([A, B, C]):
                    continue
                D = mo.random_point_on(mo.line_through(B, C), rng, self.height)
                E = mo.random_point_on(mo.line_through(C, A), rng, self.height)
                if D != E:
                    return (A, B, C, D, E)
        if axiom == "A4":
            return (mo.random_line(rng, self.height),)
        raise ValueError(axiom)

    def _v_P1(self, t):
        P, Q = t
        return None if len(mo.candidate_lines(P, Q)) == 1 else list(t)

    _v_A1 = _v_P1
    _v_A2 = _v_P1

    def _v_P2(self, t):
        l, k = t
        return None if len(mo.candidate_points(l, k)) == 1 else list(t)

    def _frame(self):
        return [mo.MoultonPoint.affine(x, y) for x, y in ((0, 0), (1, 0), (0, 1), (1, 1))]

    def _v_P3(self, t):
        quad = self._frame()
        return None if not any(MOULTON_GEOMETRY.collinear(list(x)) for x in combinations(quad, 3)) else []

    def _v_A3(self, t):
        A, B, C, D, E = t
        try:
            F = mo.intersection(mo.line_through(A, B), mo.line_through(D, E))
        except DegenerateError:
            return None
        return None if F is not None else list(t)

    def _v_A4(self, t):
        l, = t
        rng = Random(str(l))
        pts = {mo.random_point_on(l, rng, self.height) for _ in range(30)}
        return None if len(pts) >= 3 else list(t)

    def _v_A5(self, t):
        return None

    def _v_A6(self, t):
        return None if not MOULTON_GEOMETRY.collinear(self._frame()[:3]) else []


MOULTON_GEOMETRY = mo.MoultonGeometry()


# -- constructors -----------------------------------------------------------

def build_pg3(ring: Ring, enumerate: bool = True) -> IncidenceModel:
    """PG(3, K): enumerated for finite rings when asked, sampled otherwise."""
    if enumerate:
        if not ring.finite:
            raise ValueError("enumeration needs a finite ring")
        return CoordinateStructure(ring, 4)
    return CoordinateSpace(ring)


def build_pg2(ring: Ring) -> CoordinateStructure:
    if not ring.finite:
        raise ValueError("enumeration needs a finite ring")
    return CoordinateStructure(ring, 3)


def moulton_line_through(P: mo.MoultonPoint, Q: mo.MoultonPoint) -> mo.MoultonLine:
    return mo.line_through(P, Q)


class ModelFormatError(ValueError):
    pass


def parse_abstract_model(text: str, max_elements: int = MAX_ELEMENTS, tag: str = "abstract") -> FiniteIncidenceStructure:
    """Parse the sectioned ``points:`` / ``lines:`` / ``planes:`` format.

    Point ids may be listed one or several per row; each line or plane row is
    ``id: member member ...``.  Plane members may be point or line ids.
    """
    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        head = body.lower()
        if head in ("points:", "lines:", "planes:"):
            current = head[:-1]
            if current in sections:
                raise ModelFormatError(f"line {lineno}: section {current!r} repeated")
            sections[current] = []
            continue
        if current is None:
            raise ModelFormatError(f"line {lineno}: content before any section header")
        sections[current].append((lineno, body))
    if not sections:
        raise ModelFormatError("empty model file")
    if "points" not in sections:
        raise ModelFormatError("missing points: section")

    seen: set[str] = set()

    def claim(ident: str, lineno: int):
        if ident in seen:
            raise ModelFormatError(f"line {lineno}: duplicate element id {ident!r}")
        seen.add(ident)

    point_ids: list[str] = []
    for lineno, body in sections["points"]:
        for ident in body.replace(",", " ").split():
            claim(ident, lineno)
            point_ids.append(ident)
    if not point_ids:
        raise ModelFormatError("no points declared")
    pindex = {p: i for i, p in enumerate(point_ids)}

    def members(section: str, resolve) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {}
        for lineno, body in sections.get(section, []):
            if ":" not in body:
                raise ModelFormatError(f"line {lineno}: expected 'id: members'")
            ident, rest = (s.strip() for s in body.split(":", 1))
            if not ident:
                raise ModelFormatError(f"line {lineno}: missing id")
            claim(ident, lineno)
            pts: list[int] = []
            for m in rest.replace(",", " ").split():
                for p in resolve(m, lineno):
                    if p in pts and section == "lines":
                        raise ModelFormatError(f"line {lineno}: point {m!r} listed twice")
                    if p not in pts:
                        pts.append(p)
            if len(pts) < 2:
                raise ModelFormatError(f"line {lineno}: {section[:-1]} {ident!r} has fewer than two points")
            out[ident] = pts
        return out

    def point_ref(m, lineno):
        if m not in pindex:
            raise ModelFormatError(f"line {lineno}: unknown point id {m!r}")
        return [pindex[m]]

    lines = members("lines", point_ref)

    def plane_ref(m, lineno):
        if m in pindex:
            return [pindex[m]]
        if m in lines:
            return lines[m]
        raise ModelFormatError(f"line {lineno}: unknown point or line id {m!r}")

    planes = members("planes", plane_ref) if "planes" in sections else None
    total = len(point_ids) + len(lines) + (len(planes) if planes else 0)
    if total > max_elements:
        raise ModelFormatError(f"model has {total} elements, above the cap of {max_elements}")
    if planes is not None and not planes:
        raise ModelFormatError("planes: section is empty")
    return FiniteIncidenceStructure(point_ids, lines, planes, tag=tag)


def load_abstract_model(path: str | Path, max_elements: int = MAX_ELEMENTS) -> FiniteIncidenceStructure:
    path = Path(path)
    return parse_abstract_model(path.read_text(), max_elements, tag=f"file:{path.name}")


def model_from_spec(spec: str, height: int = 4, enumerate: bool | None = None) -> IncidenceModel:
    """``gf:p`` | ``rational`` | ``quaternion`` | ``moulton`` | ``file:PATH``."""
    from .scalars import ring_from_tag

    if spec == "moulton":
        return MoultonPlane(height)
    if spec.startswith("file:"):
        return load_abstract_model(spec[5:])
    ring = ring_from_tag(spec)
    if enumerate is None:
        enumerate = ring.finite
    if enumerate:
        return build_pg3(ring, True)
    space = CoordinateSpace(ring, height)
    return space
