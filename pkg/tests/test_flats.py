from __future__ import annotations

from fractions import Fraction
from itertools import product
from random import Random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from projgeom import flats as fl
from projgeom.flats import (are_skew, canonicalize, collinear, coplanar, enumerate_flats, incident, join, meet,
                            point, points_of)
from projgeom.scalars import QUATERNION, RATIONAL, Quaternion, gf

from conftest import GF2, GF3, line

E1, E2, E3, E4 = [tuple(1 if i == j else 0 for j in range(4)) for i in range(4)]


# -- brute-force oracle over GF(p): a flat is the set of its projective points

def _normal(v, p):
    lead = next(x for x in v if x % p)
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in v)


def oracle_points(gens, p):
    out = set()
    for coeffs in product(range(p), repeat=len(gens)):
        v = tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) % p for i in range(4))
        if any(v):
            out.add(_normal(v, p))
    return frozenset(out)


def as_set(f, p):
    return oracle_points([[x.v for x in row] for row in f.rows], p)


def oracle_rank(pointset, p):
    # |PG(r-1, p)| = (p^r - 1) / (p - 1)
    return {0: 0, 1: 1, p + 1: 2, p * p + p + 1: 3, p ** 3 + p * p + p + 1: 4}[len(pointset)]


# -- canonical form ---------------------------------------------------------

def test_canonicalize_examples():
    assert point(RATIONAL, 2, 4, 0, 0).rows == ((1, 2, 0, 0),)
    f = canonicalize([(1, 0, 0, 0), (1, 1, 0, 0)], GF3)
    assert f.rows == canonicalize([E1, E2], GF3).rows
    assert f.rank == 2


def test_quaternion_point_normalized_on_the_right():
    i, k = Quaternion(0, 1, 0, 0), Quaternion(0, 0, 0, 1)
    P = point(QUATERNION, i, k, 0, 0)
    # scaling (i, k) on the right by i^-1 = -i gives (1, -k i) = (1, -j)
    assert P.coords == (Quaternion(1), Quaternion(0, 0, -1, 0), Quaternion(0), Quaternion(0))
    assert P == point(QUATERNION, 1, Quaternion(0, 0, -1, 0), 0, 0)
    # the left multiple gives a different point
    assert P != point(QUATERNION, i * i, i * k, 0, 0)


def test_canonicalize_errors_and_rank_drop():
    with pytest.raises(ValueError):
        canonicalize([(0, 0, 0, 0)], RATIONAL)
    assert canonicalize([E1, (2, 0, 0, 0)], RATIONAL).rank == 1


# -- join / meet / incidence examples ----------------------------------------

def test_join_examples():
    assert join(point(RATIONAL, *E1), point(RATIONAL, *E2)) == line(RATIONAL, E1, E2)
    plane = join(line(RATIONAL, E1, E2), point(RATIONAL, 1, 1, 1, 1))
    assert plane.is_plane
    # x3 = x4 is the plane spanned by e1, e2, e3 + e4
    assert plane == canonicalize([E1, E2, (0, 0, 1, 1)], RATIONAL)
    P = point(RATIONAL, 1, 2, 3, 4)
    assert join(P, P) == P


def test_meet_examples():
    x4_zero = canonicalize([E1, E2, E3], RATIONAL)
    x3_zero = canonicalize([E1, E2, E4], RATIONAL)
    assert meet(x4_zero, x3_zero) == line(RATIONAL, E1, E2)
    assert meet(line(RATIONAL, E1, E2), line(RATIONAL, E3, E4)) is None
    x1_eq_x2 = canonicalize([(1, 1, 0, 0), E3, E4], RATIONAL)
    x3_eq_x4 = canonicalize([E1, E2, (0, 0, 1, 1)], RATIONAL)
    assert meet(x1_eq_x2, x3_eq_x4) == line(RATIONAL, (1, 1, 0, 0), (0, 0, 1, 1))


def test_incidence_examples():
    assert incident(point(RATIONAL, *E1), line(RATIONAL, E1, E2))
    assert not incident(point(RATIONAL, *E3), canonicalize([E1, E2, E4], RATIONAL))
    assert incident(line(RATIONAL, E1, E2), canonicalize([E1, E2, (0, 0, 1, 1)], RATIONAL))


def test_skew_examples():
    assert are_skew(line(RATIONAL, E1, E2), line(RATIONAL, E3, E4))
    assert not are_skew(line(RATIONAL, E1, E2), line(RATIONAL, E2, E3))
    a, c = line(GF3, E1, E2), line(GF3, (1, 0, 1, 0), (0, 1, 0, 1))
    assert are_skew(a, c)
    assert fl.span(a, c).is_full
    with pytest.raises(ValueError):
        are_skew(point(GF3, *E1), a)


def test_collinear_coplanar_examples():
    e = [point(RATIONAL, *v) for v in (E1, E2, E3)]
    assert collinear([e[0], e[1], point(RATIONAL, 1, 1, 0, 0)])
    assert not collinear(e)
    assert coplanar(e)
    assert not coplanar(e + [point(RATIONAL, 1, 1, 1, 1)])


def test_mixed_rings_rejected():
    with pytest.raises(TypeError):
        join(point(GF3, *E1), point(RATIONAL, *E2))


# -- exhaustive checks against the set oracle over PG(3, 2) --------------------

def _all_flats(ring):
    return [f for r in (1, 2, 3) for f in enumerate_flats(ring, r)]


def test_enumeration_matches_oracle_gf2():
    flats = _all_flats(GF2)
    sets = {as_set(f, 2) for f in flats}
    assert len(sets) == len(flats) == 15 + 35 + 15
    for f in flats:
        assert set(points_of(f)) == {point(GF2, *v) for v in as_set(f, 2)}


def test_join_meet_rank_formula_exhaustive_gf2():
    flats = _all_flats(GF2)
    for f, g in product(flats, repeat=2):
        sf, sg = as_set(f, 2), as_set(g, 2)
        m = meet(f, g)
        inter = sf & sg
        assert (m is None) == (not inter)
        if m is not None:
            assert as_set(m, 2) == inter
        j = join(f, g)
        assert as_set(j, 2) == oracle_points([[x.v for x in r] for r in f.rows + g.rows], 2)
        assert j.rank + (m.rank if m else 0) == f.rank + g.rank
        assert incident(f, g) == (sf <= sg)


def test_duality_round_trip_gf3():
    for plane in enumerate_flats(GF3, 3):
        P = fl.dual(plane)
        assert P.is_point and fl.dual(P) == plane
    with pytest.raises(TypeError):
        fl.dual(point(QUATERNION, 1, 0, 0, 0))


# -- randomized properties ----------------------------------------------------

RINGS = [gf(5), RATIONAL, QUATERNION]


def _random_gens(ring, rng, k):
    return [[ring.random(rng, 3) for _ in range(4)] for _ in range(k)]


@given(st.sampled_from(RINGS), st.integers(0, 10 ** 6), st.integers(1, 3))
def test_canonical_form_unique_under_right_recombination(ring, seed, k):
    rng = Random(seed)
    gens = _random_gens(ring, rng, k)
    f = canonicalize(gens, ring)
    # combine generators with random coefficients multiplied on the right
    mixed = []
    for _ in range(k + 1):
        coeffs = [ring.random(rng, 3) for _ in gens]
        mixed.append([sum((g[i] * c for g, c in zip(gens, coeffs)), ring.zero) for i in range(4)])
    g = canonicalize(gens + mixed, ring)
    assert g == f and g.rows == f.rows


@given(st.sampled_from(RINGS), st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(1, 3))
def test_rank_formula_and_containment(ring, seed, r1, r2):
    rng = Random(seed)
    f = canonicalize(_random_gens(ring, rng, r1), ring)
    g = canonicalize(_random_gens(ring, rng, r2), ring)
    m, j = meet(f, g), join(f, g)
    assert j.rank + (m.rank if m else 0) == f.rank + g.rank
    assert incident(f, j) and incident(g, j)
    if m is not None:
        assert incident(m, f) and incident(m, g)


@given(st.integers(0, 10 ** 6))
def test_rational_canonical_rows_are_reduced(seed):
    rng = Random(seed)
    f = canonicalize(_random_gens(RATIONAL, rng, 2), RATIONAL)
    for row in f.rows:
        lead = next(x for x in row if x != 0)
        assert lead == 1 and all(isinstance(x, Fraction) for x in row)
