from __future__ import annotations

from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projgeom import configurations as cf
from projgeom import flats as fl
from projgeom import projectivities as pj
from projgeom import sampling as sm
from projgeom.flats import incident, join, meet, points_of
from projgeom.projectivities import AxialPerspectivity, Perspectivity, PerspectivityChain
from projgeom.scalars import RATIONAL, gf

from conftest import GF2, GF3, GF5, line, pt

E1, E2, E3, E4 = [tuple(1 if i == j else 0 for j in range(4)) for i in range(4)]


class Identity:
    @staticmethod
    def apply(X):
        return X


def test_common_point_is_fixed():
    a, b = line(GF5, E1, E2), line(GF5, E1, E3)
    p = Perspectivity(pt(GF5, 0, 1, 1, 0), a, b)
    M = meet(a, b)
    assert pj.apply_perspectivity(p, M) == M


def test_planar_perspectivity_gf3():
    # plane coordinates; source y = 0, target x = 0, center (1, 1, 1)
    O = pt(GF3, 1, 1, 1)
    src, dst = line(GF3, (1, 0, 0), (0, 0, 1)), line(GF3, (0, 1, 0), (0, 0, 1))
    p = Perspectivity(O, src, dst)
    X = pt(GF3, 1, 0, 1)
    Y = p.apply(X)
    # OX is the line x = z, which meets x = 0 at (0, 1, 0)
    assert Y == pt(GF3, 0, 1, 0)
    assert fl.collinear([O, X, Y])


def test_perspectivity_preconditions():
    a, b = line(GF5, E1, E2), line(GF5, E1, E3)
    with pytest.raises(ValueError):
        Perspectivity(pt(GF5, *E2), a, b)
    with pytest.raises(ValueError):
        Perspectivity(pt(GF5, *E4), a, b)
    p = Perspectivity(pt(GF5, 0, 1, 1, 0), a, b)
    with pytest.raises(ValueError):
        p.apply(pt(GF5, *E4))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_perspectivity_is_a_bijection(q):
    rng = Random(q)
    F = gf(q)
    for _ in range(10):
        p = pj.random_link(pj.random_line(F, rng), rng)
        src = list(points_of(p.source))
        images = [p.apply(X) for X in src]
        assert set(images) == set(points_of(p.target))
        assert [p.inverse().apply(Y) for Y in images] == src


def test_axial_examples_gf3():
    a, b, c = line(GF3, E1, E2), line(GF3, E3, E4), line(GF3, (1, 0, 1, 0), (0, 1, 0, 1))
    ap = AxialPerspectivity(c, a, b)
    assert pj.apply_axial(ap, pt(GF3, *E1)) == pt(GF3, *E3)
    assert pj.apply_axial(ap, pt(GF3, *E2)) == pt(GF3, *E4)
    for A in points_of(a):
        B = ap.apply(A)
        assert fl.meets(join(A, B), c)
    with pytest.raises(ValueError):
        AxialPerspectivity(a, a, b)


def _axial_pair(gi: cf.GallucciInput):
    """Phi(c) and Phi(d) from row a to row b, and the base pairs on e, f, g."""
    phi_c, phi_d = AxialPerspectivity(gi.c, gi.a, gi.b), AxialPerspectivity(gi.d, gi.a, gi.b)
    pairs = [(meet(gi.a, t), meet(gi.b, t)) for t in (gi.e, gi.f, gi.g)]
    return phi_c, phi_d, pairs


@pytest.mark.parametrize("ring", [GF2, GF3], ids=lambda r: r.tag)
def test_axial_maps_through_one_regulus_agree_exhaustive(ring):
    rng = Random(0)
    a, b, c = sm.skew_triple(ring, rng)
    e, f, g = cf.transversals_of_three_skew(a, b, c)[:3]
    for d in cf.transversals_of_three_skew(e, f, g):
        if d in (a, b) or not (fl.are_skew(d, a) and fl.are_skew(d, b)):
            continue
        phi_c, phi_d = AxialPerspectivity(c, a, b), AxialPerspectivity(d, a, b)
        assert all(phi_c.apply(A) == phi_d.apply(A) for A in points_of(a))


def test_axial_maps_disagree_over_quaternions():
    res = sm.find_quaternion_pappus_failure()
    P, Q = sm.lift_parameters(res.config, Random(0))
    gi = cf.gallucci_from_pappus_config(res.config, P, Q)
    assert cf.check_gallucci(gi).fails
    phi_c, phi_d, pairs = _axial_pair(gi)
    assert all(phi_c.apply(X) == Y == phi_d.apply(X) for X, Y in pairs)
    assert not pj.ftp_check(gi.a, gi.b, pairs, phi_c, phi_d, extra=[meet(gi.a, gi.h)])


# -- reduction --------------------------------------------------------------

def test_single_link_is_already_reduced():
    a, b = line(GF5, E1, E2), line(GF5, E1, E3)
    chain = PerspectivityChain([Perspectivity(pt(GF5, 0, 1, 1, 0), a, b)])
    assert pj.reduce_chain(chain) == chain


def test_concurrent_rows_merge_to_one_link():
    a, a1, a2 = line(GF5, E1, E2), line(GF5, E1, E3), line(GF5, E1, E4)
    O, O1 = pt(GF5, 0, 1, 1, 0), pt(GF5, 0, 0, 1, 1)
    chain = PerspectivityChain([Perspectivity(O, a, a1), Perspectivity(O1, a1, a2)])
    red = pj.reduce_chain(chain)
    assert isinstance(red, PerspectivityChain) and len(red) == 1
    assert incident(red.links[0].center, join(O, O1))
    assert all(red.apply(X) == chain.apply(X) for X in points_of(a))


def test_chain_returning_to_its_start_is_rejected():
    a, b = line(GF5, E1, E2), line(GF5, E1, E3)
    p = Perspectivity(pt(GF5, 0, 1, 1, 0), a, b)
    with pytest.raises(ValueError):
        pj.reduce_chain(PerspectivityChain([p, p.inverse()]))


def test_non_composable_chain_rejected():
    a, b = line(GF5, E1, E2), line(GF5, E1, E3)
    p = Perspectivity(pt(GF5, 0, 1, 1, 0), a, b)
    with pytest.raises(ValueError):
        PerspectivityChain([p, p])
    with pytest.raises(ValueError):
        PerspectivityChain([])


def _check_reduction(chain, rng=None):
    red = pj.reduce_chain(chain)
    pts = pj.sample_points(chain.source, rng)
    assert pj.agree_on(chain, red, pts) is None
    if isinstance(red, AxialPerspectivity):
        assert fl.are_skew(chain.source, chain.target)
    else:
        assert len(red) <= 2
        assert not fl.are_skew(chain.source, chain.target)
    return red


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6), st.integers(1, 6), st.booleans())
def test_reduction_gf5(seed, length, planar):
    rng = Random(seed)
    _check_reduction(pj.random_chain(GF5, rng, length, planar=planar))


@pytest.mark.parametrize("q", [2, 3])
def test_reduction_small_fields(q):
    rng = Random(q)
    for n in range(20):
        _check_reduction(pj.random_chain(gf(q), rng, 2 + n % 5, planar=n % 3 == 0))


def test_reduction_rational_sampled():
    rng = Random(9)
    for n in range(4):
        _check_reduction(pj.random_chain(RATIONAL, rng, 4, height=2, planar=n % 2 == 0), Random(n))


# -- fundamental theorem ------------------------------------------------------

@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_ftp_gf5(seed):
    rng = Random(seed)
    chain = pj.random_chain(GF5, rng, 3)
    src, dst = chain.source, chain.target
    pts = list(points_of(src))
    rng.shuffle(pts)
    pairs = [(X, chain.apply(X)) for X in pts[:3]]
    other = pj.chain_through_three(src, dst, pairs, rng)
    assert pj.ftp_check(src, dst, pairs, chain, other)


def test_ftp_identity_candidate():
    rng = Random(1)
    a = pj.random_line(GF5, rng)
    first = pj.random_link(a, rng)
    pts = list(points_of(a))[:3]
    back = pj.chain_through_three(first.target, a, [(first.apply(X), X) for X in pts], rng)
    # a -> b -> m -> a fixing three points of a
    loop = PerspectivityChain((first,) + back.links)
    assert len(loop) == 3
    assert pj.ftp_check(a, a, [(X, X) for X in pts], loop, Identity())


def test_ftp_rejects_bad_pairs():
    rng = Random(2)
    chain = pj.random_chain(GF5, rng, 2)
    X = next(iter(points_of(chain.source)))
    with pytest.raises(ValueError):
        pj.ftp_check(chain.source, chain.target, [(X, chain.apply(X))] * 2, chain, chain)
    off = next(P for P in points_of(fl.full_space(GF5)) if not incident(P, chain.source))
    with pytest.raises(ValueError):
        pj.ftp_check(chain.source, chain.target, [(off, off)] * 3, chain, chain)
