from __future__ import annotations

from fractions import Fraction
from random import Random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from projgeom import moulton as mo
from projgeom.flats import DegenerateError
from projgeom.models import moulton_line_through
from projgeom.moulton import MoultonLine, MoultonPoint

P = MoultonPoint.affine


def test_positive_slope_is_ordinary():
    assert moulton_line_through(P(0, 0), P(1, 1)) == MoultonLine.sloped(1, 0)


def test_negative_slope_bends_on_the_right():
    l = moulton_line_through(P(0, 0), P(2, -1))
    # b = 0 from the origin, then -1 = (m/2) * 2 gives m = -1
    assert l == MoultonLine.sloped(-1, 0)
    assert l.bent and l.y_at(Fraction(2)) == -1 and l.y_at(Fraction(-2)) == 2


def test_horizontal_line():
    assert moulton_line_through(P(-1, 1), P(1, 1)) == MoultonLine.sloped(0, 1)


def test_line_crossing_the_axis():
    # (-2, 3) and (2, -1): left slope m, right slope m/2 with 3 = -2m + b, -1 = m + b
    l = moulton_line_through(P(-2, 3), P(2, -1))
    assert l == MoultonLine.sloped(Fraction(-4, 3), Fraction(1, 3))


def test_equal_points_rejected():
    with pytest.raises(DegenerateError):
        moulton_line_through(P(1, 1), P(1, 1))


def test_ideal_points_and_vertical_lines():
    assert moulton_line_through(P(3, 0), P(3, 5)) == MoultonLine.vertical(3)
    assert moulton_line_through(MoultonPoint.at_infinity(2), MoultonPoint.at_infinity(None)) == mo.LINE_AT_INFINITY
    # parallel lines meet at their common direction
    assert mo.intersection(MoultonLine.sloped(-1, 0), MoultonLine.sloped(-1, 3)) == MoultonPoint.at_infinity(-1)


def test_string_forms_round_trip():
    for text in ("1/2,-3/1", "inf:-2/1", "inf:v"):
        assert str(mo.parse_point(text)) == text
    for text in ("x=1/3", "-1/1,2/1", "inf"):
        assert str(mo.parse_line(text)) == text


coords = st.fractions(min_value=-6, max_value=6, max_denominator=5)
points = st.builds(MoultonPoint, coords, coords)


@given(points, points)
def test_two_points_one_line(A, B):
    if A == B:
        return
    # every family was tried; exactly one survives the incidence predicate
    cands = mo.candidate_lines(A, B)
    assert len(cands) == 1
    l = cands[0]
    assert mo.on(A, l) and mo.on(B, l)


@given(st.integers(0, 10 ** 6))
def test_two_lines_one_point(seed):
    rng = Random(seed)
    l, k = mo.random_line(rng), mo.random_line(rng)
    if l == k:
        return
    pts = mo.candidate_points(l, k)
    assert len(pts) == 1
    assert mo.on(pts[0], l) and mo.on(pts[0], k)
