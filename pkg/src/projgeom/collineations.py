"""Central-axial collineations of a projective plane and the four-point
decomposition.

A central-axial collineation is stored as its center O, its axis, and one
pair A -> A' on a line through O.  Every other image is found with joins
and meets only: for X off the line OA, put M = AX . axis; the image of X is
OX . A'M.  Points of OA are reached through an auxiliary pair.  The center
may lie on the axis (an elation).

Points are 3-vectors (the plane on its own) but any plane of PG(3, K) works,
since only join and meet are used.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice
from random import Random
from typing import Iterable, Sequence

from . import flats as fl
from .flats import DegenerateError, Flat, incident, join, meet, points_of


@dataclass(frozen=True)
class CentralAxialCollineation:
    center: Flat
    axis: Flat
    A: Flat
    A2: Flat

    def __post_init__(self):
        O, axis, A, A2 = self.center, self.axis, self.A, self.A2
        if not (O.is_point and axis.is_line and A.is_point and A2.is_point):
            raise ValueError("collineation needs a center, an axis line and two points")
        if A == O or A2 == O:
            raise ValueError("sample pair must avoid the center")
        if incident(A, axis) or incident(A2, axis):
            raise ValueError("sample pair must avoid the axis")
        if not fl.collinear([O, A, A2]):
            raise ValueError("center and sample pair are not collinear")
        if fl.span(axis, O, A).rank != 3:
            raise ValueError("center, axis and sample pair are not in one plane")

    @property
    def plane(self) -> Flat:
        return join(self.axis, self.A)

    @property
    def is_identity(self) -> bool:
        return self.A == self.A2

    def _through_pair(self, X: Flat, P: Flat, P2: Flat) -> Flat:
        M = fl.meet_point(join(P, X), self.axis)
        return fl.meet_point(join(self.center, X), join(P2, M))

    def _auxiliary_pair(self) -> tuple[Flat, Flat]:
        OA = join(self.center, self.A)
        for B in points_of(self.plane):
            if not incident(B, OA) and not incident(B, self.axis):
                return B, self._through_pair(B, self.A, self.A2)
        raise DegenerateError("plane has no point off the line OA and the axis")

    def apply(self, X: Flat) -> Flat:
        if not incident(X, self.plane):
            raise ValueError("point is not in the plane of the collineation")
        if X == self.center or incident(X, self.axis) or self.is_identity:
            return X
        if X == self.A:
            return self.A2
        if incident(X, join(self.center, self.A)):
            B, B2 = self._auxiliary_pair()
            return self._through_pair(X, B, B2)
        return self._through_pair(X, self.A, self.A2)

    __call__ = apply


def apply_ca(k: CentralAxialCollineation, X: Flat) -> Flat:
    return k.apply(X)


def compose(collineations: Sequence[CentralAxialCollineation], X: Flat) -> Flat:
    """Apply the collineations in list order (first element first)."""
    for k in collineations:
        X = k.apply(X)
    return X


def in_general_position(points: Sequence[Flat]) -> bool:
    return len(set(points)) == len(points) and all(
        not fl.collinear(list(t)) for t in combinations(points, 3))


# -- decomposition ----------------------------------------------------------

def _axis_from(candidates: Iterable[Flat | None]) -> Flat:
    pts = []
    for P in candidates:
        if P is not None and P.is_point and P not in pts:
            pts.append(P)
    if len(pts) < 2:
        raise DegenerateError("axis points coincide")
    return join(pts[0], pts[1])


def _cross(P: Flat, Q: Flat, R: Flat, S: Flat) -> Flat | None:
    """PQ . RS, or None when either join or the meet is degenerate."""
    if P == Q or R == S:
        return None
    m = meet(join(P, Q), join(R, S))
    return m if m is not None and m.is_point else None


def _checked(k: CentralAxialCollineation, pairs) -> CentralAxialCollineation:
    for X, Y in pairs:
        if k.apply(X) != Y:
            raise DegenerateError("collineation misses a prescribed pair")
    return k


def _first_two(A, B, E, A1, B1, E1):
    """phi1 with center A1 and phi2 with center A sending A, B, E to A1, B1, E1.

    Both pass through the intermediate triple A2, B2, E2 on the line joining
    AB1 . A1B and AE1 . A1E.
    """
    B2 = _cross(A, B1, A1, B)
    E2 = _cross(A, E1, A1, E)
    if B2 is None or E2 is None or B2 == E2:
        raise DegenerateError("intermediate line is undefined")
    A2 = _cross(A, A1, B2, E2)
    if A2 is None or len({A, A1, A2}) < 3:
        raise DegenerateError("intermediate point on AA' is undefined")
    t1 = _axis_from([_cross(A, B2, A2, B), _cross(B, E2, B2, E), _cross(A, E2, A2, E)])
    phi1 = _checked(CentralAxialCollineation(A1, t1, A, A2), [(B, B2), (E, E2)])
    t2 = _axis_from([_cross(A2, B1, A1, B2), _cross(B2, E1, B1, E2), _cross(A2, E1, A1, E2)])
    phi2 = _checked(CentralAxialCollineation(A, t2, A2, A1), [(B2, B1), (E2, E1)])
    return phi1, phi2


_SWEEP = 64


def _candidates_on(line: Flat) -> list[Flat]:
    if line.ring.finite:
        return list(points_of(line))
    return list(islice(points_of(line), _SWEEP))


def _last_step(A1, B1, C3, D3, C1, D1, allow_split: bool) -> list[CentralAxialCollineation]:
    """Collineations with axis A1B1 sending C3 -> C1 and D3 -> D1."""
    axis = join(A1, B1)
    if C3 == C1 and D3 == D1:
        return []
    if C3 == C1:
        return [_checked(CentralAxialCollineation(C1, axis, D3, D1), [(C3, C1)])]
    if D3 == D1:
        return [_checked(CentralAxialCollineation(D1, axis, C3, C1), [(D3, D1)])]
    k1, k2 = join(C1, C3), join(D1, D3)
    if k1 != k2:
        O = fl.meet_point(k1, k2)
        return [_checked(CentralAxialCollineation(O, axis, C3, C1), [(D3, D1)])]
    # all four points on one line k through E': the center is a point of k
    # making the pair C3 -> C1 carry D3 to D1
    for O in _candidates_on(k1):
        if O in (C3, C1):
            continue
        try:
            return [_checked(CentralAxialCollineation(O, axis, C3, C1), [(D3, D1)])]
        except (ValueError, DegenerateError):
            continue
    if not allow_split:
        raise DegenerateError("no single final collineation found")
    # move C3, D3 off k with a first collineation, then finish in one step
    plane = join(axis, C3)
    for O in points_of(plane):
        if incident(O, k1) or incident(O, axis):
            continue
        for C4 in _candidates_on(join(O, C3)):
            if C4 in (O, C3) or incident(C4, axis) or incident(C4, k1):
                continue
            try:
                first = CentralAxialCollineation(O, axis, C3, C4)
                D4 = first.apply(D3)
                rest = _last_step(A1, B1, C4, D4, C1, D1, allow_split=False)
                return [first] + rest
            except (ValueError, DegenerateError):
                continue
    raise DegenerateError("final step could not be completed")


def _three_steps(src, dst, allow_split: bool) -> list[CentralAxialCollineation]:
    A, B, C, D = src
    A1, B1, C1, D1 = dst
    E = fl.meet_point(join(A, B), join(C, D))
    E1 = fl.meet_point(join(A1, B1), join(C1, D1))
    phi1, phi2 = _first_two(A, B, E, A1, B1, E1)
    C3 = phi2.apply(phi1.apply(C))
    D3 = phi2.apply(phi1.apply(D))
    return [phi1, phi2] + _last_step(A1, B1, C3, D3, C1, D1, allow_split)


def _phi0_candidates(src, dst, rng: Random | None):
    """Collineations moving line AB off itself and off A'B'."""
    A, B = src[0], src[1]
    AB, A1B1 = join(A, B), join(dst[0], dst[1])
    plane = join(AB, src[2])
    if rng is None:
        centers = (O for O in points_of(plane))
    else:
        centers = (fl.random_point_on(plane, rng) for _ in range(400))
    for O in centers:
        if incident(O, AB):
            continue
        axes = []
        if rng is None:
            for P, Q in combinations(list(islice(points_of(plane), 12)), 2):
                axes.append(join(P, Q))
        else:
            for _ in range(4):
                P, Q = fl.random_point_on(plane, rng), fl.random_point_on(plane, rng)
                if P != Q:
                    axes.append(join(P, Q))
        for axis in axes:
            if incident(A, axis) or axis == AB:
                continue
            images = _candidates_on(join(O, A)) if rng is None else [
                fl.random_point_on(join(O, A), rng) for _ in range(4)]
            for A0 in images:
                if A0 in (A, O) or incident(A0, axis):
                    continue
                try:
                    k = CentralAxialCollineation(O, axis, A, A0)
                    B0 = k.apply(B)
                except (ValueError, DegenerateError):
                    continue
                if join(A0, B0) not in (AB, A1B1):
                    yield k


def decompose_four_points(src: Sequence[Flat], dst: Sequence[Flat], *, rng: Random | None = None,
                          force_phi0: bool = False) -> list[CentralAxialCollineation]:
    """At most four c-a collineations whose composite sends src[i] to dst[i].

    With ``force_phi0`` (or when AB = A'B', or when the direct construction
    degenerates) a first collineation moves AB; ``rng`` randomizes that
    choice, otherwise it comes from a deterministic sweep.
    """
    src, dst = list(src), list(dst)
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("need four points and four images")
    if not in_general_position(src) or not in_general_position(dst):
        raise ValueError("quadruple not in general position")
    plane = fl.span(*src)
    if fl.span(plane, *dst) != plane:
        raise ValueError("points and images are not in one plane")
    if src == dst and not force_phi0:
        return []
    if not force_phi0 and join(src[0], src[1]) != join(dst[0], dst[1]):
        try:
            return _verified(_three_steps(src, dst, allow_split=True), src, dst)
        except (ValueError, DegenerateError):
            pass
    for phi0 in _phi0_candidates(src, dst, rng):
        moved = [phi0.apply(P) for P in src]
        try:
            return _verified([phi0] + _three_steps(moved, dst, allow_split=False), src, dst)
        except (ValueError, DegenerateError):
            continue
    raise DegenerateError("no decomposition found")


def _verified(ks, src, dst):
    for P, Q in zip(src, dst):
        if compose(ks, P) != Q:
            raise DegenerateError("composite misses a prescribed pair")
    return ks


def plane_points(plane: Flat, rng: Random | None = None, samples: int = 200, height: int = 4) -> list[Flat]:
    if plane.ring.finite:
        return list(points_of(plane))
    rng = rng or Random(0)
    pts = list(islice(points_of(plane), samples // 2))
    while len(pts) < samples:
        pts.append(fl.random_point_on(plane, rng, height))
    return pts


def uniqueness_check(src, dst, first, second, *, rng: Random | None = None, samples: int = 200) -> bool:
    """Do two composites realizing the same four pairs agree on the plane?

    Exhaustive over finite rings, sampled otherwise.
    """
    for P, Q in zip(src, dst):
        if compose(first, P) != Q or compose(second, P) != Q:
            raise ValueError("composites disagree on the prescribed quadruple")
    plane = fl.span(*src)
    return all(compose(first, X) == compose(second, X) for X in plane_points(plane, rng, samples))


def random_general_quadruple(ring, rng: Random, dim: int = 3, height: int = 4) -> list[Flat]:
    while True:
        pts = [fl.random_point(ring, rng, dim, height) for _ in range(4)]
        if in_general_position(pts):
            return pts
