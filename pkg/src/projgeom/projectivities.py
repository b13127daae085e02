"""Perspectivities between point rows, their chains, and chain reduction.

A chain ``a1 -O1-> a2 -O2-> ... -> an`` is reduced with two moves:

* merge: when a, a', a'' pass through one point (and a != a''), the two
  perspectivities a -O-> a' -O'-> a'' are one perspectivity a -> a'' whose
  center lies on OO';
* reroute: a' -O'-> a'' equals a' -O'-> b -O'-> a'' for any line b of the
  plane (a', a'') missing O'.

Three consecutive links become two by rerouting the middle link through
b = (a1.a2)(a3.a4) and merging on both sides.  When that b is unusable the
first or last link is rerouted through a swept line first, which moves
a1.a2 (or a3.a4) and removes the obstruction.  Chains whose two ends are
skew collapse to one axial perspectivity about the line joining the two
remaining centers.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, islice
from random import Random
from typing import Iterable, Sequence

from . import flats as fl
from .flats import DegenerateError, Flat, incident, join, meet, points_of


class ReductionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Perspectivity:
    """Central perspectivity from ``source`` to ``target`` through ``center``."""

    center: Flat
    source: Flat
    target: Flat

    def __post_init__(self):
        if not (self.center.is_point and self.source.is_line and self.target.is_line):
            raise ValueError("perspectivity needs a point and two lines")
        if self.source == self.target:
            raise ValueError("source and target coincide")
        if incident(self.center, self.source) or incident(self.center, self.target):
            raise ValueError("center lies on source or target")
        if fl.span(self.source, self.target, self.center).rank != 3:
            raise ValueError("center, source and target are not coplanar")

    @property
    def plane(self) -> Flat:
        return join(self.source, self.target)

    def apply(self, X: Flat) -> Flat:
        if not incident(X, self.source):
            raise ValueError("point is not on the source line")
        return fl.meet_point(join(self.center, X), self.target)

    __call__ = apply

    def inverse(self) -> Perspectivity:
        return Perspectivity(self.center, self.target, self.source)


@dataclass(frozen=True)
class AxialPerspectivity:
    """Map of a row ``source`` to a skew row ``target`` through planes on ``axis``."""

    axis: Flat
    source: Flat
    target: Flat

    def __post_init__(self):
        for x, y in ((self.axis, self.source), (self.axis, self.target), (self.source, self.target)):
            if not fl.are_skew(x, y):
                raise ValueError("axis, source and target must be pairwise skew")

    def apply(self, A: Flat) -> Flat:
        if not incident(A, self.source):
            raise ValueError("point is not on the source line")
        return fl.meet_point(self.target, join(self.axis, A))

    __call__ = apply


class PerspectivityChain:
    """A composable, nonempty sequence of perspectivities."""

    def __init__(self, links: Iterable[Perspectivity]):
        self.links = tuple(links)
        if not self.links:
            raise ValueError("empty chain")
        for p, q in zip(self.links, self.links[1:]):
            if p.target != q.source:
                raise ValueError("chain links are not composable")

    @property
    def source(self) -> Flat:
        return self.links[0].source

    @property
    def target(self) -> Flat:
        return self.links[-1].target

    def lines(self) -> list[Flat]:
        return [self.links[0].source] + [p.target for p in self.links]

    def apply(self, X: Flat) -> Flat:
        for p in self.links:
            X = p.apply(X)
        return X

    __call__ = apply

    def __len__(self):
        return len(self.links)

    def __iter__(self):
        return iter(self.links)

    def __eq__(self, other):
        return isinstance(other, PerspectivityChain) and self.links == other.links

    def __repr__(self):
        return f"PerspectivityChain(len={len(self.links)})"


def apply_perspectivity(p: Perspectivity, X: Flat) -> Flat:
    return p.apply(X)


def apply_axial(ap: AxialPerspectivity, A: Flat) -> Flat:
    return ap.apply(A)


# -- reduction --------------------------------------------------------------

def _concurrent(x: Flat, y: Flat, z: Flat) -> bool:
    P = meet(x, y)
    return P is not None and P.is_point and incident(P, z)


def _mergeable(L: Perspectivity, M: Perspectivity) -> bool:
    return L.source != M.target and _concurrent(L.source, L.target, M.target)


def merge(L: Perspectivity, M: Perspectivity) -> Perspectivity:
    """Single perspectivity equal to ``M after L`` for concurrent rows."""
    if not _mergeable(L, M):
        raise ValueError("rows are not concurrent or the ends coincide")
    x, z = L.source, M.target
    common = meet(x, z)
    rays = []
    for A in points_of(x):
        if A == common:
            continue
        rays.append(join(A, M.apply(L.apply(A))))
        if len(rays) == 2:
            break
    center = fl.meet_point(rays[0], rays[1])
    return Perspectivity(center, x, z)


def _merge_all(links: list[Perspectivity]) -> list[Perspectivity]:
    links = list(links)
    i = 0
    while i < len(links) - 1:
        if _mergeable(links[i], links[i + 1]):
            links[i:i + 2] = [merge(links[i], links[i + 1])]
            i = max(i - 1, 0)
        else:
            i += 1
    return links


def _observation_two(l1: Perspectivity, l2: Perspectivity, l3: Perspectivity):
    """Reduce three links to two through b = (a1.a2)(a3.a4), or None."""
    a1, a2, a3, a4 = l1.source, l2.source, l3.source, l3.target
    P1, P2 = meet(a1, a2), meet(a3, a4)
    if P1 is None or P2 is None or P1 == P2:
        return None
    b = join(P1, P2)
    if b in (a1, a2, a3, a4) or incident(l2.center, b):
        return None
    first = merge(l1, Perspectivity(l2.center, a2, b))
    second = merge(Perspectivity(l2.center, b, a3), l3)
    return [first, second]


_SWEEP_LIMIT = 64


def _lines_through_in(Q: Flat, plane: Flat, avoid: Iterable[Flat]) -> Iterable[Flat]:
    avoid = set(avoid)
    seen = set()
    for R in islice(points_of(plane), 4 * _SWEEP_LIMIT):
        if R == Q:
            continue
        k = join(Q, R)
        if k in seen or k in avoid:
            continue
        seen.add(k)
        yield k


def _window_variants(l1: Perspectivity, l2: Perspectivity, l3: Perspectivity):
    yield [l1, l2, l3]
    a1, a2, a3, a4 = l1.source, l2.source, l3.source, l3.target
    Q = meet(a2, a3)
    # reroute the first link through k on Q = a2.a3
    for k in islice(_lines_through_in(Q, l1.plane, (a1, a2, a3)), _SWEEP_LIMIT):
        if incident(l1.center, k):
            continue
        try:
            head = Perspectivity(l1.center, a1, k)
            mid = merge(Perspectivity(l1.center, k, a2), l2)
        except (ValueError, DegenerateError):
            continue
        yield [head, mid, l3]
    # reroute the last link through k on Q
    for k in islice(_lines_through_in(Q, l3.plane, (a2, a3, a4)), _SWEEP_LIMIT):
        if incident(l3.center, k):
            continue
        try:
            mid = merge(l2, Perspectivity(l3.center, a3, k))
            tail = Perspectivity(l3.center, k, a4)
        except (ValueError, DegenerateError):
            continue
        yield [l1, mid, tail]


def _reroutes(links: list[Perspectivity]):
    for i, link in enumerate(links):
        for m in _lines_in(link.plane):
            if m in (link.source, link.target) or incident(link.center, m):
                continue
            yield links[:i] + [Perspectivity(link.center, link.source, m),
                               Perspectivity(link.center, m, link.target)] + links[i + 1:]


def _lines_in(plane: Flat) -> Iterable[Flat]:
    seen = set()
    pts = list(islice(points_of(plane), 2 * _SWEEP_LIMIT))
    for i, R in enumerate(pts):
        for S in pts[i + 1:]:
            k = join(R, S)
            if k not in seen:
                seen.add(k)
                yield k


_SEARCH_STATES = 5000
_SEARCH_MAX_LINKS = 4


def _search(window: list[Perspectivity]) -> list[Perspectivity]:
    """Breadth-first search over reroutes for a state that reduces to two links."""
    queue = deque([window])
    seen = set()
    while queue and len(seen) < _SEARCH_STATES:
        links = _merge_all(queue.popleft())
        if len(links) <= 2:
            return links
        key = tuple(links)
        if key in seen:
            continue
        seen.add(key)
        for i in range(len(links) - 2):
            if links[i].source == links[i + 2].target:
                continue
            out = _observation_two(*links[i:i + 3])
            if out is not None:
                queue.appendleft(links[:i] + out + links[i + 3:])
                break
        else:
            if len(links) <= _SEARCH_MAX_LINKS:
                queue.extend(_reroutes(links))
    raise ReductionError("no admissible auxiliary line found")


def _shorten(window: Sequence[Perspectivity]) -> list[Perspectivity]:
    for variant in _window_variants(*window):
        links = _merge_all(variant)
        if len(links) <= 2:
            return links
        out = _observation_two(*links)
        if out is not None:
            return out
    return _search(list(window))


def _split_generic(link: Perspectivity, avoid: Iterable[Flat]) -> list[Perspectivity]:
    avoid = set(avoid) | {link.source, link.target}
    plane = link.plane
    for R in islice(points_of(plane), 4 * _SWEEP_LIMIT):
        for S in islice(points_of(plane), 4 * _SWEEP_LIMIT):
            if S == R:
                continue
            m = join(R, S)
            if m in avoid or incident(link.center, m):
                continue
            return [Perspectivity(link.center, link.source, m), Perspectivity(link.center, m, link.target)]
    raise ReductionError("no auxiliary line for rerouting")


def _cross_axis_pair(chain: PerspectivityChain) -> list[Perspectivity]:
    """Two links with centers A' and A built from the cross joins of image
    pairs, for coplanar endpoints over a finite field.

    Used only when the local moves get stuck (tiny planes leave too few
    lines to reroute through).  The result is checked on every point.
    """
    a, b = chain.source, chain.target
    ring = a.ring
    if not ring.finite or not ring.commutative or not fl.coplanar([a, b]) or a.dim != b.dim:
        raise ReductionError("no two-link chain found")
    M = meet(a, b)
    pts = list(points_of(a))
    images = {X: chain.apply(X) for X in pts}
    for A in pts:
        A2 = images[A]
        if A == M or A2 == M:
            continue
        cross = []
        for Y in pts:
            if Y == A:
                continue
            P = meet(join(A, images[Y]), join(A2, Y))
            if P is not None and P.is_point and P not in cross:
                cross.append(P)
        for P, Q in combinations(cross, 2):
            c = join(P, Q)
            if fl.incident(A, c) or fl.incident(A2, c) or c in (a, b):
                continue
            try:
                links = [Perspectivity(A2, a, c), Perspectivity(A, c, b)]
            except ValueError:
                continue
            cand = PerspectivityChain(links)
            if all(cand.apply(X) == images[X] for X in pts):
                return links
    raise ReductionError("no two-link chain found")


def reduce_chain(chain: PerspectivityChain):
    """Equivalent chain of at most two links, or an axial perspectivity when
    the first and last rows are skew."""
    links = list(chain.links)
    if chain.source == chain.target:
        raise ValueError("chain maps a row onto itself; endpoints must differ")
    while True:
        links = _merge_all(links)
        if len(links) <= 2:
            break
        rows = [links[0].source] + [p.target for p in links]
        i = next((i for i in range(len(links) - 2) if rows[i] != rows[i + 3]), None)
        if i is None:
            # every window returns to its start: reroute one middle link
            links[1:2] = _split_generic(links[1], rows)
            continue
        try:
            links[i:i + 3] = _shorten(links[i:i + 3])
        except ReductionError:
            links = _cross_axis_pair(chain)
            break
    if len(links) == 2 and links[0].source.dim == 4 and fl.are_skew(links[0].source, links[1].target):
        axis = join(links[0].center, links[1].center)
        return AxialPerspectivity(axis, links[0].source, links[1].target)
    return PerspectivityChain(links)


def agree_on(p1, p2, points: Iterable[Flat]) -> Flat | None:
    """First point where two maps differ, or None."""
    for X in points:
        if p1.apply(X) != p2.apply(X):
            return X
    return None


def sample_points(line: Flat, rng: Random | None = None, samples: int = 100, height: int = 4) -> list[Flat]:
    """All points of a line over a finite ring; a seeded sample otherwise."""
    if line.ring.finite:
        return list(points_of(line))
    rng = rng or Random(0)
    pts = list(islice(points_of(line), samples // 2))
    while len(pts) < samples:
        pts.append(fl.random_point_on(line, rng, height))
    return pts


def ftp_check(source: Flat, target: Flat, pairs, p1, p2, *, rng: Random | None = None,
              samples: int = 100, extra: Iterable[Flat] = ()) -> bool:
    """Do two projectivities agreeing on three points agree everywhere?

    Exhaustive over finite rings, sampled (seeded) over infinite ones.
    """
    if len(pairs) != 3:
        raise ValueError("exactly three point pairs are required")
    for X, Y in pairs:
        if not incident(X, source) or not incident(Y, target):
            raise ValueError("pair is not on the stated lines")
        if p1.apply(X) != Y or p2.apply(X) != Y:
            raise ValueError("candidate maps do not realize the three pairs")
    pts = list(extra) + sample_points(source, rng, samples)
    return agree_on(p1, p2, pts) is None


# -- construction helpers ---------------------------------------------------

def random_line(ring, rng: Random, dim: int = 4, height: int = 4) -> Flat:
    while True:
        P = fl.random_point(ring, rng, dim, height)
        Q = fl.random_point(ring, rng, dim, height)
        if P != Q:
            return join(P, Q)


def random_link(source: Flat, rng: Random, height: int = 4, within: Flat | None = None) -> Perspectivity:
    """A random perspectivity out of ``source``, inside ``within`` if given."""
    ring = source.ring
    ambient = within or fl.full_space(ring, source.dim)
    while True:
        X = fl.random_point_on(source, rng, height)
        Y = fl.random_point_on(ambient, rng, height)
        if incident(Y, source):
            continue
        target = join(X, Y)
        plane = join(source, target)
        O = fl.random_point_on(plane, rng, height)
        if incident(O, source) or incident(O, target):
            continue
        return Perspectivity(O, source, target)


def random_chain(ring, rng: Random, length: int, height: int = 4, planar: bool = False) -> PerspectivityChain:
    """Random chain with distinct first and last rows."""
    dim = 4
    while True:
        within = None
        if planar:
            within = join(random_line(ring, rng, dim, height), fl.random_point(ring, rng, dim, height))
            if not within.is_plane:
                continue
        start = random_line(ring, rng, dim, height)
        if within is not None:
            P, Q = fl.random_point_on(within, rng, height), fl.random_point_on(within, rng, height)
            if P == Q:
                continue
            start = join(P, Q)
        links = []
        row = start
        for _ in range(length):
            link = random_link(row, rng, height, within)
            links.append(link)
            row = link.target
        if row != start:
            return PerspectivityChain(links)


def chain_through_three(source: Flat, target: Flat, pairs, rng: Random, height: int = 4,
                        tries: int = 200) -> PerspectivityChain:
    """A two-link chain realizing three given point pairs.

    Pick A with image A1 off the source row, a random row m through A1
    meeting the source, a random center U on AA1; then the second center is
    V = B'B1 . C'C1 where B', C' are the U-images on m.
    """
    pairs = list(pairs)
    for _ in range(tries):
        rng.shuffle(pairs)
        (A, A1), (B, B1), (C, C1) = pairs
        if incident(A1, source) or A == A1:
            continue
        X = fl.random_point_on(source, rng, height)
        if X == A or incident(X, target):
            continue
        m = join(A1, X)
        if m in (source, target):
            continue
        U = fl.random_point_on(join(A, A1), rng, height)
        if U in (A, A1) or incident(U, source) or incident(U, m):
            continue
        try:
            first = Perspectivity(U, source, m)
            B2, C2 = first.apply(B), first.apply(C)
            if B2 == B1 or C2 == C1:
                continue
            V = fl.meet_point(join(B2, B1), join(C2, C1))
            second = Perspectivity(V, m, target)
        except (ValueError, DegenerateError):
            continue
        chain = PerspectivityChain([first, second])
        if all(chain.apply(P) == Q for P, Q in pairs):
            return chain
    raise ReductionError("could not build a chain through the three pairs")
