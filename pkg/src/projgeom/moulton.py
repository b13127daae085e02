"""The Moulton plane with exact rational coordinates.

Affine points are rational pairs.  A non-vertical line has a parameter ``m``
(its slope left of the y-axis) and an intercept ``b``; when ``m < 0`` the
line is bent and has slope ``m/2`` on the half-plane ``x >= 0``.  Lines with
equal ``m`` are parallel and share an ideal point; vertical lines share the
ideal point ``VERTICAL``.  The ideal points form the line at infinity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Optional

from .flats import DegenerateError
from .scalars import format_rational, parse_rational

VERTICAL = "v"


@dataclass(frozen=True)
class MoultonPoint:
    """Affine ``(x, y)`` or, when ``ideal`` is set, the direction ``m``
    (``None`` meaning vertical)."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None
    ideal: bool = False
    m: Optional[Fraction] = None

    @classmethod
    def affine(cls, x, y) -> MoultonPoint:
        return cls(Fraction(x), Fraction(y))

    @classmethod
    def at_infinity(cls, m=None) -> MoultonPoint:
        return cls(ideal=True, m=None if m is None else Fraction(m))

    def __str__(self):
        if self.ideal:
            return "inf:" + (VERTICAL if self.m is None else format_rational(self.m))
        return f"{format_rational(self.x)},{format_rational(self.y)}"


@dataclass(frozen=True)
class MoultonLine:
    """``kind`` is ``"vertical"`` (x = c), ``"sloped"`` (m, b) or ``"infinity"``."""

    kind: str
    m: Optional[Fraction] = None
    b: Optional[Fraction] = None
    c: Optional[Fraction] = None

    @classmethod
    def vertical(cls, c) -> MoultonLine:
        return cls("vertical", c=Fraction(c))

    @classmethod
    def sloped(cls, m, b) -> MoultonLine:
        return cls("sloped", m=Fraction(m), b=Fraction(b))

    @property
    def bent(self) -> bool:
        return self.kind == "sloped" and self.m < 0

    def y_at(self, x: Fraction) -> Fraction:
        if self.kind != "sloped":
            raise ValueError("only sloped lines are graphs")
        slope = self.m / 2 if (self.m < 0 and x >= 0) else self.m
        return slope * x + self.b

    def __str__(self):
        if self.kind == "vertical":
            return f"x={format_rational(self.c)}"
        if self.kind == "infinity":
            return "inf"
        return f"{format_rational(self.m)},{format_rational(self.b)}"


LINE_AT_INFINITY = MoultonLine("infinity")


def on(P: MoultonPoint, l: MoultonLine) -> bool:
    """Exact incidence predicate."""
    if l.kind == "infinity":
        return P.ideal
    if P.ideal:
        if l.kind == "vertical":
            return P.m is None
        return P.m is not None and P.m == l.m
    if l.kind == "vertical":
        return P.x == l.c
    return P.y == l.y_at(P.x)


def _sloped_through(P: MoultonPoint, m: Fraction) -> MoultonLine:
    if m < 0 and P.x >= 0:
        return MoultonLine.sloped(m, P.y - m / 2 * P.x)
    return MoultonLine.sloped(m, P.y - m * P.x)


def candidate_lines(P: MoultonPoint, Q: MoultonPoint) -> list[MoultonLine]:
    """Every line through P and Q found by trying each formula family.

    The families are: vertical, unbent, bent with both points on one side,
    and bent with the points on opposite sides of the y-axis.  Each candidate
    is kept only if the incidence predicate accepts both points, so a
    result of length one certifies uniqueness.
    """
    cands: list[MoultonLine] = []
    if P.ideal and Q.ideal:
        cands.append(LINE_AT_INFINITY)
    elif P.ideal or Q.ideal:
        A, D = (Q, P) if P.ideal else (P, Q)
        cands.append(MoultonLine.vertical(A.x) if D.m is None else _sloped_through(A, D.m))
    else:
        if P.x == Q.x:
            cands.append(MoultonLine.vertical(P.x))
        else:
            (x1, y1), (x2, y2) = sorted([(P.x, P.y), (Q.x, Q.y)])
            s = (y2 - y1) / (x2 - x1)
            cands.append(MoultonLine.sloped(s, y1 - s * x1))
            cands.append(MoultonLine.sloped(2 * s, y1 - s * x1))
            if x1 < 0 < x2:
                m = (y2 - y1) / (x2 / 2 - x1)
                cands.append(MoultonLine.sloped(m, y1 - m * x1))
    out = []
    for l in cands:
        if on(P, l) and on(Q, l) and l not in out:
            out.append(l)
    return out


def line_through(P: MoultonPoint, Q: MoultonPoint) -> MoultonLine:
    if P == Q:
        raise DegenerateError("line through two equal points")
    cands = candidate_lines(P, Q)
    if len(cands) != 1:
        raise AssertionError(f"expected a unique line through {P} and {Q}, got {cands}")
    return cands[0]


def candidate_points(l: MoultonLine, k: MoultonLine) -> list[MoultonPoint]:
    """Every common point of two lines, solving each half-plane separately."""
    cands: list[MoultonPoint] = []
    if l.kind == "infinity" or k.kind == "infinity":
        other = k if l.kind == "infinity" else l
        if other.kind == "vertical":
            cands.append(MoultonPoint.at_infinity(None))
        elif other.kind == "sloped":
            cands.append(MoultonPoint.at_infinity(other.m))
    elif l.kind == "vertical" or k.kind == "vertical":
        v, other = (l, k) if l.kind == "vertical" else (k, l)
        if other.kind == "vertical":
            cands.append(MoultonPoint.at_infinity(None))
        else:
            cands.append(MoultonPoint(v.c, other.y_at(v.c)))
    elif l.m == k.m:
        cands.append(MoultonPoint.at_infinity(l.m))
    else:
        for right in (False, True):
            s1 = l.m / 2 if (right and l.m < 0) else l.m
            s2 = k.m / 2 if (right and k.m < 0) else k.m
            if s1 == s2:
                continue
            x = (k.b - l.b) / (s1 - s2)
            if (x >= 0) if right else (x <= 0):
                cands.append(MoultonPoint(x, s1 * x + l.b))
    out = []
    for P in cands:
        if on(P, l) and on(P, k) and P not in out:
            out.append(P)
    return out


def intersection(l: MoultonLine, k: MoultonLine) -> MoultonPoint:
    if l == k:
        raise DegenerateError("intersection of a line with itself")
    cands = candidate_points(l, k)
    if len(cands) != 1:
        raise AssertionError(f"expected a unique common point of {l} and {k}, got {cands}")
    return cands[0]


def random_affine_point(rng: Random, height: int = 4) -> MoultonPoint:
    def r():
        return Fraction(rng.randint(-height, height), rng.randint(1, height))
    return MoultonPoint(r(), r())


def random_point_on(l: MoultonLine, rng: Random, height: int = 4) -> MoultonPoint:
    if l.kind == "infinity":
        return MoultonPoint.at_infinity(Fraction(rng.randint(-height, height), rng.randint(1, height)))
    x = Fraction(rng.randint(-height, height), rng.randint(1, height))
    if l.kind == "vertical":
        return MoultonPoint(l.c, x)
    return MoultonPoint(x, l.y_at(x))


def random_line(rng: Random, height: int = 4) -> MoultonLine:
    roll = rng.random()
    if roll < 0.02:
        return LINE_AT_INFINITY
    if roll < 0.15:
        return MoultonLine.vertical(Fraction(rng.randint(-height, height), rng.randint(1, height)))
    return MoultonLine.sloped(
        Fraction(rng.randint(-height, height), rng.randint(1, height)),
        Fraction(rng.randint(-height, height), rng.randint(1, height)),
    )


def parse_point(text: str) -> MoultonPoint:
    text = text.strip()
    if text.startswith("inf:"):
        rest = text[4:]
        return MoultonPoint.at_infinity(None if rest == VERTICAL else parse_rational(rest))
    x, y = text.split(",")
    return MoultonPoint(parse_rational(x), parse_rational(y))


def parse_line(text: str) -> MoultonLine:
    text = text.strip()
    if text == "inf":
        return LINE_AT_INFINITY
    if text.startswith("x="):
        return MoultonLine.vertical(parse_rational(text[2:]))
    m, b = text.split(",")
    return MoultonLine.sloped(parse_rational(m), parse_rational(b))


class MoultonGeometry:
    """Join/meet/incidence adaptor used by the configuration verifiers."""

    tag = "moulton"

    def join(self, P, Q):
        return line_through(P, Q)

    def meet(self, l, k):
        return intersection(l, k)

    def on(self, P, l) -> bool:
        return on(P, l)

    def equal_lines(self, l, k) -> bool:
        return l == k

    def collinear(self, points) -> bool:
        pts = list(dict.fromkeys(points))
        if len(pts) <= 2:
            return True
        l = line_through(pts[0], pts[1])
        return all(on(P, l) for P in pts[2:])


MOULTON = MoultonGeometry()
