"""Seeded generators of admissible configurations and counterexample searches.

Each generator draws bounded-height coordinates (all of GF(q) for prime
fields) and rejects draws that break the hypotheses of the theorem being
tested, so the verifiers should never answer ``degenerate`` on its output.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from random import Random
from typing import Any, Callable

from . import configurations as cf
from . import flats as fl
from . import moulton as mo
from .flats import DegenerateError, Flat, incident, join, meet, points_of
from .scalars import Ring


def _pt(ring: Ring, rng: Random, height: int, dim: int = 3, within: Flat | None = None) -> Flat:
    if within is not None:
        return fl.random_point_on(within, rng, height)
    return fl.random_point(ring, rng, dim, height)


def _other_point_on(line: Flat, rng: Random, height: int, avoid) -> Flat:
    while True:
        P = fl.random_point_on(line, rng, height)
        if P not in avoid:
            return P


def _noncollinear(ring, rng, height, dim):
    while True:
        pts = [_pt(ring, rng, height, dim) for _ in range(3)]
        if len(set(pts)) == 3 and not fl.collinear(pts):
            return pts


# -- Desargues ---------------------------------------------------------------

def desargues_planar(ring: Ring, rng: Random, height: int = 4):
    """(A, B, C, A', B', C', S): perspective triangles in PG(2, K)."""
    if ring.finite and ring.order < 3:
        raise ValueError("the plane over GF(2) has too few points")
    while True:
        A, B, C = _noncollinear(ring, rng, height, 3)
        S = _pt(ring, rng, height, 3)
        sides = [join(A, B), join(B, C), join(C, A)]
        if any(incident(S, s) for s in sides):
            continue
        A2 = _other_point_on(join(S, A), rng, height, (S, A))
        B2 = _other_point_on(join(S, B), rng, height, (S, B))
        C2 = _other_point_on(join(S, C), rng, height, (S, C))
        if fl.collinear([A2, B2, C2]):
            continue
        if join(A, B) == join(A2, B2) or join(B, C) == join(B2, C2) or join(C, A) == join(C2, A2):
            continue
        return (A, B, C, A2, B2, C2, S)


def desargues_spatial(ring: Ring, rng: Random, height: int = 4, perspective: bool = True):
    """Two non-coplanar triangles in PG(3, K), perspective from a point or
    with one vertex moved off its connector."""
    while True:
        A, B, C = _noncollinear(ring, rng, height, 4)
        alpha = fl.span(A, B, C)
        O = _pt(ring, rng, height, 4)
        if incident(O, alpha):
            continue
        A2 = _other_point_on(join(O, A), rng, height, (O, A))
        B2 = _other_point_on(join(O, B), rng, height, (O, B))
        C2 = _other_point_on(join(O, C), rng, height, (O, C))
        if not perspective:
            C2 = _pt(ring, rng, height, 4)
        pts = {A, B, C, A2, B2, C2}
        if len(pts) != 6 or fl.collinear([A2, B2, C2]):
            continue
        if fl.span(A2, B2, C2) == alpha:
            continue
        if len({join(A, A2), join(B, B2), join(C, C2)}) != 3:
            continue
        return ((A, B, C), (A2, B2, C2))


def moulton_desargues(rng: Random, height: int = 4):
    """Perspective triangles in the Moulton plane (affine points only)."""
    g = mo.MOULTON
    while True:
        S, A, B, C = (mo.random_affine_point(rng, height) for _ in range(4))
        if len({S, A, B, C}) < 4 or g.collinear([A, B, C]):
            continue
        if any(g.on(S, g.join(P, Q)) for P, Q in ((A, B), (B, C), (C, A))):
            continue
        primes = []
        for P in (A, B, C):
            Q = mo.random_point_on(g.join(S, P), rng, height)
            if Q in (S, P) or Q.ideal:
                break
            primes.append(Q)
        if len(primes) < 3:
            continue
        A2, B2, C2 = primes
        if g.collinear(primes) or len({A, B, C, A2, B2, C2, S}) < 7:
            continue
        if g.join(A, B) == g.join(A2, B2) or g.join(B, C) == g.join(B2, C2) or g.join(C, A) == g.join(C2, A2):
            continue
        return (A, B, C, A2, B2, C2, S)


# -- Pappus ------------------------------------------------------------------

def pappus_sextuple(ring: Ring, rng: Random, height: int = 4):
    """Three points on each of two distinct lines of PG(2, K), none at the
    common point."""
    if ring.finite and ring.order < 3:
        raise ValueError("needs at least four points per line")
    while True:
        l1 = join(*_noncollinear(ring, rng, height, 3)[:2])
        l2 = join(*_noncollinear(ring, rng, height, 3)[:2])
        if l1 == l2:
            continue
        M = meet(l1, l2)
        first, second = [], []
        for line, out in ((l1, first), (l2, second)):
            tries = 0
            while len(out) < 3 and tries < 50:
                tries += 1
                P = fl.random_point_on(line, rng, height)
                if P != M and P not in out:
                    out.append(P)
        if len(first) == 3 and len(second) == 3:
            return tuple(first + second)


def brianchon_sextuple(ring: Ring, rng: Random, height: int = 4):
    """Three lines through each of two distinct points, none through both."""
    if ring.finite and ring.order < 3:
        raise ValueError("needs at least four points per line")
    while True:
        P, P2 = _pt(ring, rng, height, 3), _pt(ring, rng, height, 3)
        if P == P2:
            continue
        base = join(P, P2)
        pencils = []
        for center, other in ((P, P2), (P2, P)):
            lines = []
            tries = 0
            while len(lines) < 3 and tries < 60:
                tries += 1
                X = _pt(ring, rng, height, 3)
                if X == center:
                    continue
                l = join(center, X)
                if l != base and l not in lines:
                    lines.append(l)
            pencils.append(lines)
        if all(len(p) == 3 for p in pencils):
            return tuple(pencils[0] + pencils[1])


def pappus_exhaustive(ring: Ring, fixed_lines: bool = False):
    """Every ordered sextuple over a finite field.

    With ``fixed_lines`` the two carrier lines are fixed to x3 = 0 and x1 = 0
    (the collineation group is transitive on pairs of lines, so this covers
    every configuration up to collineation).
    """
    lines = fl.enumerate_flats(ring, 2, 3)
    if fixed_lines:
        pairs = [(fl.canonicalize([(1, 0, 0), (0, 1, 0)], ring), fl.canonicalize([(0, 1, 0), (0, 0, 1)], ring))]
    else:
        pairs = [(l1, l2) for l1 in lines for l2 in lines if l1 != l2]
    for l1, l2 in pairs:
        M = meet(l1, l2)
        r1 = [P for P in points_of(l1) if P != M]
        r2 = [P for P in points_of(l2) if P != M]
        for first in permutations(r1, 3):
            for second in permutations(r2, 3):
                yield first + second


# -- Gallucci ----------------------------------------------------------------

def skew_triple(ring: Ring, rng: Random, height: int = 4):
    while True:
        lines = []
        for _ in range(3):
            P, Q = _pt(ring, rng, height, 4), _pt(ring, rng, height, 4)
            if P != Q:
                lines.append(join(P, Q))
        if len(lines) == 3 and all(fl.are_skew(x, y) for x, y in ((lines[0], lines[1]),
                                                                   (lines[0], lines[2]),
                                                                   (lines[1], lines[2]))):
            return tuple(lines)


def gallucci_input(ring: Ring, rng: Random, height: int = 4) -> cf.GallucciInput:
    """a, b, c pairwise skew; e, f, g, h transversals through four distinct
    points of a; d the transversal of e, f, g through a point of e."""
    if ring.finite and ring.order < 3:
        raise ValueError("needs four points per line")
    while True:
        a, b, c = skew_triple(ring, rng, height)
        pts = []
        while len(pts) < 4:
            P = fl.random_point_on(a, rng, height)
            if P not in pts:
                pts.append(P)
        e, f, g, h = (cf.transversal_through(a, b, c, P) for P in pts)
        X = fl.random_point_on(e, rng, height)
        try:
            d = cf.transversal_from_point(f, g, X)
        except (ValueError, DegenerateError):
            continue
        gi = cf.GallucciInput(a, b, c, e, f, g, h, d)
        if not gi.problems():
            return gi


# -- lifting Pappus into space -------------------------------------------------

def lift_parameters(sextuple, rng: Random, height: int = 4, tries: int = 200):
    """Random P off the base plane x4 = 0 and Q on XP, distinct from X and P,
    for which the lifted lines are well defined."""
    ring = sextuple[0].ring
    A, B, C, A2, B2, C2 = (cf._embed(x) for x in sextuple)
    X = fl.meet_point(join(A, B2), join(A2, B))
    for _ in range(tries):
        P = _pt(ring, rng, height, 4)
        if P.coords[3] == ring.zero:
            continue
        Q = _other_point_on(join(X, P), rng, height, (X, P))
        try:
            cf.lift_pappus(sextuple, P, Q)
        except DegenerateError:
            continue
        return P, Q
    raise DegenerateError("no admissible lift found")


# -- counterexample searches ---------------------------------------------------

@dataclass
class SearchResult:
    found: bool
    trials: int
    seed: int
    config: Any = None
    verdict: cf.Verdict | None = None


def search(generator: Callable[[Random], Any], verifier: Callable[[Any], cf.Verdict], seed: int,
           budget: int) -> SearchResult:
    """First configuration (in seed order) whose verdict fails."""
    rng = Random(seed)
    for n in range(1, budget + 1):
        config = generator(rng)
        v = verifier(config)
        if v.fails:
            return SearchResult(True, n, seed, config, v)
    return SearchResult(False, budget, seed)


# seeds documented for the stored counterexamples
QUATERNION_PAPPUS_SEED = 1
MOULTON_DESARGUES_SEED = 1


def find_quaternion_pappus_failure(seed: int = QUATERNION_PAPPUS_SEED, budget: int = 10_000,
                                   height: int = 4) -> SearchResult:
    from .scalars import QUATERNION

    return search(lambda r: pappus_sextuple(QUATERNION, r, height),
                  lambda s: cf.check_pappus(*s), seed, budget)


def find_moulton_desargues_failure(seed: int = MOULTON_DESARGUES_SEED, budget: int = 10_000,
                                   height: int = 4) -> SearchResult:
    return search(lambda r: moulton_desargues(r, height),
                  lambda c: cf.check_desargues_planar(*c), seed, budget)
