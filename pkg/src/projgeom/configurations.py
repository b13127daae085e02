"""Verifiers for the classical configuration theorems.

Every verifier returns a :class:`Verdict`.  Violated genericity
preconditions give a ``degenerate`` verdict naming the broken condition;
malformed flats (wrong rank, mixed rings) raise.  Planar verifiers work with
any geometry adaptor exposing ``join``, ``meet``, ``on`` and ``collinear``:
:data:`FLATS` for coordinatized planes and spaces, or the Moulton plane.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator

from . import flats as fl
from .flats import DegenerateError, Flat, incident, join, meet, meets, points_of
from .moulton import MoultonPoint, MOULTON

HOLDS = "holds"
FAILS = "fails"
DEGENERATE = "degenerate"


@dataclass
class Verdict:
    status: str
    witness: dict[str, Any] = field(default_factory=dict)
    notes: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS

    @property
    def degenerate(self) -> bool:
        return self.status == DEGENERATE


def _degenerate(why: str) -> Verdict:
    return Verdict(DEGENERATE, notes=why)


class FlatGeometry:
    tag = "flats"

    def join(self, P: Flat, Q: Flat) -> Flat:
        return fl.line_through(P, Q)

    def meet(self, l: Flat, k: Flat) -> Flat:
        return fl.meet_point(l, k)

    def on(self, P: Flat, l: Flat) -> bool:
        return incident(P, l)

    def collinear(self, points) -> bool:
        return fl.collinear(list(points))


FLATS = FlatGeometry()


def geometry_for(P):
    return MOULTON if isinstance(P, MoultonPoint) else FLATS


def _check_points(*pts: Flat) -> None:
    for P in pts:
        if not isinstance(P, Flat) or not P.is_point:
            raise ValueError(f"expected a point, got {P!r}")


# -- transversals -----------------------------------------------------------

def transversal_from_point(a: Flat, b: Flat, P: Flat) -> Flat:
    """The line through P meeting both skew lines a and b."""
    _check_points(P)
    if not fl.are_skew(a, b):
        raise ValueError("transversal_from_point needs skew lines")
    if incident(P, a) or incident(P, b):
        raise ValueError("P lies on one of the lines")
    t = meet(join(a, P), join(b, P))
    assert t is not None and t.is_line
    return t


def transversals_of_three_skew(a: Flat, b: Flat, c: Flat, limit: int | None = None) -> list[Flat]:
    """Common transversals of three pairwise skew lines, one per point of a.

    Over GF(q) all q+1 are returned; over an infinite ring the first
    ``limit`` points of a deterministic sweep of ``a`` are used.
    """
    for x, y in ((a, b), (a, c), (b, c)):
        if not fl.are_skew(x, y):
            raise ValueError("lines are not pairwise skew")
    if limit is None and not a.ring.finite:
        raise ValueError("a limit is required over an infinite ring")
    out = []
    for A in points_of(a):
        if limit is not None and len(out) >= limit:
            break
        out.append(transversal_through(a, b, c, A))
    return out


def transversal_through(a: Flat, b: Flat, c: Flat, A: Flat) -> Flat:
    """The transversal of skew a, b, c through the point A of a."""
    B = fl.meet_point(b, join(c, A))
    return join(A, B)


# -- Desargues --------------------------------------------------------------

def check_desargues_planar(A, B, C, A2, B2, C2, S, geometry=None) -> Verdict:
    """Triangles ABC and A2B2C2 perspective from S have collinear side meets."""
    g = geometry or geometry_for(A)
    pts = [A, B, C, A2, B2, C2, S]
    if len(set(pts)) != 7:
        return _degenerate("vertices and center must be seven distinct points")
    if g.collinear([A, B, C]) or g.collinear([A2, B2, C2]):
        return _degenerate("a triangle is degenerate")
    for P, P2, name in ((A, A2, "AA'"), (B, B2, "BB'"), (C, C2, "CC'")):
        if not g.on(S, g.join(P, P2)):
            return _degenerate(f"connector {name} misses the center")
    connectors = {g.join(A, A2), g.join(B, B2), g.join(C, C2)}
    if len(connectors) != 3:
        return _degenerate("two connectors coincide")
    sides = [(g.join(A, B), g.join(A2, B2)), (g.join(A, C), g.join(A2, C2)), (g.join(B, C), g.join(B2, C2))]
    if any(s == s2 for s, s2 in sides):
        return _degenerate("a pair of corresponding sides coincide")
    X, Y, Z = (g.meet(s, s2) for s, s2 in sides)
    if g.collinear([X, Y, Z]):
        return Verdict(HOLDS, {"X": X, "Y": Y, "Z": Z, "axis": g.join(X, Y)})
    return Verdict(FAILS, {"X": X, "Y": Y, "Z": Z}, "X, Y, Z are not collinear")


def desargues_via_space(A, B, C, A2, B2, C2, S, lift_point: Flat, D: Flat) -> Verdict:
    """Planar Desargues decided through a spatial construction.

    A line l is drawn from S to ``lift_point`` (off the plane alpha of the
    triangles), D is a point of the plane (l, CC') on neither l nor CC'.
    With E = CD.l and E' = C'D.l the planes ABE and A'B'E' meet in a line s';
    the verdict holds when X, Y, Z all lie on the trace of the plane (D, s')
    in alpha.
    """
    base = fl.span(A, B, C)
    if not base.is_plane:
        return _degenerate("triangle is degenerate")
    if incident(lift_point, base):
        raise DegenerateError("lift point lies in the base plane")
    l = join(S, lift_point)
    CC = join(C, C2)
    gamma = join(l, CC)
    if not incident(D, gamma) or incident(D, l) or incident(D, CC):
        raise DegenerateError("D must lie in plane (l, CC') off l and CC'")
    E = fl.meet_point(join(C, D), l)
    E2 = fl.meet_point(join(C2, D), l)
    s_prime = meet(fl.span(A, B, E), fl.span(A2, B2, E2))
    if s_prime is None or not s_prime.is_line:
        return _degenerate("planes ABE and A'B'E' do not meet in a line")
    trace = meet(join(D, s_prime), base)
    X = fl.meet_point(join(A, B), join(A2, B2))
    Y = fl.meet_point(join(A, C), join(A2, C2))
    Z = fl.meet_point(join(B, C), join(B2, C2))
    if trace is not None and trace.is_line and all(incident(P, trace) for P in (X, Y, Z)):
        return Verdict(HOLDS, {"X": X, "Y": Y, "Z": Z, "axis": trace})
    return Verdict(FAILS, {"X": X, "Y": Y, "Z": Z}, "spatial trace misses X, Y, Z")


def _common_point(lines: list[Flat]) -> Flat | None:
    m = meet(lines[0], lines[1])
    if m is None or not m.is_point:
        return None
    return m if all(incident(m, l) for l in lines[2:]) else None


def check_desargues_spatial(T1, T2) -> Verdict:
    """Two non-coplanar triangles: perspective from a point iff the
    corresponding sides meet pairwise.

    ``holds`` means the equivalence is confirmed; the witness is the center O
    when the triangles are perspective, otherwise a pair of skew
    corresponding sides.  ``fails`` would mean one side of the equivalence
    is true and the other false.
    """
    A, B, C = T1
    A2, B2, C2 = T2
    _check_points(A, B, C, A2, B2, C2)
    if len({A, B, C, A2, B2, C2}) != 6:
        return _degenerate("vertices must be six distinct points")
    p1, p2 = fl.span(A, B, C), fl.span(A2, B2, C2)
    if not (p1.is_plane and p2.is_plane):
        return _degenerate("a triangle is degenerate")
    if p1 == p2:
        return _degenerate("triangles are coplanar")
    side_names = ("AB", "BC", "CA")
    sides = [(join(A, B), join(A2, B2)), (join(B, C), join(B2, C2)), (join(C, A), join(C2, A2))]
    skew_pair = next(((n, s, s2) for n, (s, s2) in zip(side_names, sides) if not meets(s, s2)), None)
    connectors = [join(A, A2), join(B, B2), join(C, C2)]
    if len(set(connectors)) != 3:
        return _degenerate("two connectors coincide")
    common = _common_point(connectors)
    perspective = common is not None
    sides_meet = skew_pair is None
    if perspective == sides_meet:
        if perspective:
            return Verdict(HOLDS, {"O": common}, "perspective from a point; sides meet")
        name, s, s2 = skew_pair
        return Verdict(HOLDS, {"side": name, "s": s, "s'": s2}, "not perspective; a side pair is skew")
    if perspective:
        name, s, s2 = skew_pair
        return Verdict(FAILS, {"O": common, "side": name, "s": s, "s'": s2},
                       "perspective but a side pair is skew")
    return Verdict(FAILS, {}, "sides meet pairwise but connectors are not concurrent")


# -- Pappus -----------------------------------------------------------------

def check_pappus(A, B, C, A2, B2, C2, geometry=None) -> Verdict:
    """Points ABC on one line, A'B'C' on another: the cross-join meets
    C''=AB'.A'B, B''=AC'.A'C, A''=BC'.B'C must be collinear."""
    g = geometry or geometry_for(A)
    pts = [A, B, C, A2, B2, C2]
    if len(set(pts)) != 6:
        return _degenerate("the six points must be distinct")
    l1, l2 = g.join(A, B), g.join(A2, B2)
    if not g.on(C, l1) or not g.on(C2, l2):
        return _degenerate("points are not on their lines")
    if l1 == l2:
        return _degenerate("the two lines coincide")
    if g is FLATS and not fl.span(l1, l2).rank == 3:
        return _degenerate("the two lines are skew")
    if any(g.on(P, l2) for P in (A, B, C)) or any(g.on(P, l1) for P in (A2, B2, C2)):
        return _degenerate("a point lies on both lines")
    C3 = g.meet(g.join(A, B2), g.join(A2, B))
    B3 = g.meet(g.join(A, C2), g.join(A2, C))
    A3 = g.meet(g.join(B, C2), g.join(B2, C))
    if g.collinear([A3, B3, C3]):
        return Verdict(HOLDS, {"A''": A3, "B''": B3, "C''": C3, "axis": g.join(B3, C3)})
    return Verdict(FAILS, {"A''": A3, "B''": B3, "C''": C3}, "cross-join points span a plane")


def check_pappus_brianchon(a, b, c, a2, b2, c2) -> Verdict:
    """Lines abc through one point, a'b'c' through another: the lines
    c''=(a.b', a'.b), b''=(a.c', a'.c), a''=(b.c', b'.c) must be concurrent."""
    lines = [a, b, c, a2, b2, c2]
    for l in lines:
        if not isinstance(l, Flat) or not l.is_line:
            raise ValueError(f"expected a line, got {l!r}")
    if len(set(lines)) != 6:
        return _degenerate("the six lines must be distinct")
    if fl.span(*lines).rank != 3:
        return _degenerate("the lines are not coplanar")
    P, P2 = meet(a, b), meet(a2, b2)
    if P is None or P2 is None or not (incident(P, c) and incident(P2, c2)):
        return _degenerate("lines do not form two pencils")
    if P == P2:
        return _degenerate("the two pencil centers coincide")
    if any(incident(P2, l) for l in (a, b, c)) or any(incident(P, l) for l in (a2, b2, c2)):
        return _degenerate("a line passes through both centers")
    m = fl.meet_point
    c3 = join(m(a, b2), m(a2, b))
    b3 = join(m(a, c2), m(a2, c))
    a3 = join(m(b, c2), m(b2, c))
    if len({a3, b3, c3}) < 3:
        return Verdict(HOLDS, {"a''": a3, "b''": b3, "c''": c3}, "two constructed lines coincide")
    O = meet(a3, b3)
    if incident(O, c3):
        return Verdict(HOLDS, {"a''": a3, "b''": b3, "c''": c3, "center": O})
    return Verdict(FAILS, {"a''": a3, "b''": b3, "c''": c3}, "constructed lines are not concurrent")


# -- Gallucci ---------------------------------------------------------------

GALLUCCI_ROLES = ("a", "b", "c", "e", "f", "g", "h", "d")


@dataclass(frozen=True)
class GallucciInput:
    """First family a, b, c; second family e, f, g of transversals; h a
    further transversal of a, b, c and d a further transversal of e, f, g."""

    a: Flat
    b: Flat
    c: Flat
    e: Flat
    f: Flat
    g: Flat
    h: Flat
    d: Flat

    def lines(self) -> dict[str, Flat]:
        return {r: getattr(self, r) for r in GALLUCCI_ROLES}

    def problems(self) -> list[str]:
        """Broken incidences or skewnesses, empty when the input is well formed."""
        out = []
        first, second = (self.a, self.b, self.c), (self.e, self.f, self.g)
        for names, family in (("abc", first), ("efg", second)):
            for i in range(3):
                for j in range(i + 1, 3):
                    if meets(family[i], family[j]):
                        out.append(f"{names[i]} and {names[j]} are not skew")
        for n1, x in zip("abc", first):
            for n2, y in zip("efg", second):
                if not meets(x, y):
                    out.append(f"{n2} misses {n1}")
        for n, x in zip("abc", first):
            if not meets(self.h, x):
                out.append(f"h misses {n}")
        for n, y in zip("efg", second):
            if not meets(self.d, y):
                out.append(f"d misses {n}")
        return out


def make_gallucci_input(**lines: Flat) -> GallucciInput:
    for name, l in lines.items():
        if not isinstance(l, Flat) or not l.is_line or l.dim != 4:
            raise ValueError(f"{name} must be a line of a 3-space")
    gi = GallucciInput(**lines)
    problems = gi.problems()
    if problems:
        raise ValueError("malformed Gallucci input: " + "; ".join(problems))
    return gi


def check_gallucci(gi: GallucciInput) -> Verdict:
    """Any transversal h of a, b, c meets any transversal d of e, f, g."""
    problems = gi.problems()
    if problems:
        raise ValueError("malformed Gallucci input: " + "; ".join(problems))
    R = meet(gi.h, gi.d)
    if R is not None:
        return Verdict(HOLDS, {"R": R})
    return Verdict(FAILS, {"h": gi.h, "d": gi.d}, "h and d are skew")


def _embed(P: Flat) -> Flat:
    if P.dim == 4:
        return P
    if P.dim == 3:
        return Flat(P.ring, tuple(row + (P.ring.zero,) for row in P.rows))
    raise ValueError("cannot embed flat")


@dataclass(frozen=True)
class LiftedPappus:
    """A planar Pappus sextuple lifted into space, with all named elements."""

    A: Flat
    B: Flat
    C: Flat
    A2: Flat
    B2: Flat
    C2: Flat
    X: Flat
    Y: Flat
    Z: Flat
    P: Flat
    Q: Flat
    gallucci: GallucciInput


def lift_pappus(sextuple, P: Flat, Q: Flat) -> LiftedPappus:
    """Build b=A'P, f=AP, c=B'Q, g=BQ, d (transversal from C' to f, g) and
    h (transversal from C to b, c) over a planar sextuple.

    Q must lie on the line XP with X = AB'.A'B, distinct from X and P.
    3-coordinate points are embedded in the plane x4 = 0.
    """
    A, B, C, A2, B2, C2 = (_embed(x) for x in sextuple)
    base = fl.span(A, B, A2)
    if not base.is_plane or len({A, B, C, A2, B2, C2}) != 6:
        raise DegenerateError("sextuple is degenerate")
    a, e = join(A, B), join(A2, B2)
    if not (incident(C, a) and incident(C2, e)) or a == e:
        raise DegenerateError("points are not on two distinct lines")
    if incident(P, base):
        raise DegenerateError("P lies in the base plane")
    X = fl.meet_point(join(A, B2), join(A2, B))
    Y = fl.meet_point(join(A, C2), join(A2, C))
    Z = fl.meet_point(join(B, C2), join(B2, C))
    if Q in (X, P) or not incident(Q, join(X, P)):
        raise DegenerateError("Q must lie on XP and differ from X and P")
    b, f = join(A2, P), join(A, P)
    c, g = join(B2, Q), join(B, Q)
    if meets(f, g) or meets(b, c):
        raise DegenerateError("lifted lines are not skew")
    d = transversal_from_point(f, g, C2)
    h = transversal_from_point(b, c, C)
    gi = GallucciInput(a=a, b=b, c=c, e=e, f=f, g=g, h=h, d=d)
    problems = gi.problems()
    if problems:
        raise DegenerateError("lift is degenerate: " + "; ".join(problems))
    return LiftedPappus(A, B, C, A2, B2, C2, X, Y, Z, P, Q, gi)


def gallucci_from_pappus_config(sextuple, P: Flat, Q: Flat) -> GallucciInput:
    return lift_pappus(sextuple, P, Q).gallucci


def pappus_from_gallucci_config(sextuple, P: Flat, Q: Flat) -> Verdict:
    """Decide Pappus for a planar sextuple through the lifted configuration.

    With P = b.f and Q = c.g, R = YP.ZQ exists exactly when X, Y, Z are
    collinear, and then lies on both h and d.
    """
    L = lift_pappus(sextuple, P, Q)
    gi = L.gallucci
    P_ = fl.meet_point(gi.b, gi.f)
    Q_ = fl.meet_point(gi.c, gi.g)
    R = meet(join(L.Y, P_), join(L.Z, Q_))
    if R is not None and R.is_point and incident(R, gi.h) and incident(R, gi.d):
        return Verdict(HOLDS, {"R": R, "X": L.X, "Y": L.Y, "Z": L.Z})
    return Verdict(FAILS, {"X": L.X, "Y": L.Y, "Z": L.Z}, "YP and ZQ do not meet on h and d")


def pencil(center: Flat, plane: Flat) -> Iterator[Flat]:
    """Lines of ``plane`` through ``center`` (deterministic order)."""
    seen = set()
    for P in points_of(plane):
        if P == center:
            continue
        l = join(center, P)
        if l not in seen:
            seen.add(l)
            yield l
