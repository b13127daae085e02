"""Exact arithmetic in the coordinate division rings.

Three rings are supported: prime fields GF(p), the rationals and the
quaternions with rational components.  Rational elements are plain
:class:`fractions.Fraction` values; the other two rings have small value
classes of their own.  Each ring is represented by a ring object that knows
how to coerce, parse, format, enumerate and sample its elements.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from random import Random
from typing import Iterator, Union


class Residue:
    """An element of the prime field GF(p)."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def _other(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise TypeError(f"kind mismatch: GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise TypeError(f"kind mismatch: GF({self.p}) vs {type(other).__name__}")

    def __add__(self, other):
        return Residue(self.p, self.v + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.p, self.v - self._other(other))

    def __rsub__(self, other):
        return Residue(self.p, self._other(other) - self.v)

    def __mul__(self, other):
        return Residue(self.p, self.v * self._other(other))

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(self.p, -self.v)

    def inverse(self) -> Residue:
        if self.v == 0:
            raise ZeroDivisionError("zero has no inverse")
        return Residue(self.p, pow(self.v, -1, self.p))

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(("gf", self.p, self.v))

    def __repr__(self):
        return f"Residue({self.p}, {self.v})"

    def __str__(self):
        return str(self.v)


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"kind mismatch: expected a rational, got {type(x).__name__}")


class Quaternion:
    """A quaternion a + bi + cj + dk with exact rational components.

    Stored as four integer numerators over one positive common denominator,
    kept in lowest terms; the components are exposed as Fractions.
    """

    __slots__ = ("n", "den")

    def __init__(self, a=0, b=0, c=0, d=0):
        comps = [_fraction(x) for x in (a, b, c, d)]
        den = 1
        for x in comps:
            den = den * x.denominator // gcd(den, x.denominator)
        self._set(tuple(x.numerator * (den // x.denominator) for x in comps), den)

    def _set(self, n: tuple[int, int, int, int], den: int) -> None:
        g = gcd(gcd(gcd(n[0], n[1]), gcd(n[2], n[3])), den)
        if g != 1:
            n = tuple(x // g for x in n)
            den //= g
        self.n = n
        self.den = den

    @classmethod
    def _raw(cls, n, den) -> Quaternion:
        q = cls.__new__(cls)
        if den < 0:
            n, den = tuple(-x for x in n), -den
        q._set(n, den)
        return q

    @staticmethod
    def _lift(x) -> Quaternion:
        if isinstance(x, Quaternion):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Quaternion._raw((x, 0, 0, 0), 1)
        raise TypeError(f"kind mismatch: quaternion vs {type(x).__name__}")

    @property
    def a(self) -> Fraction:
        return Fraction(self.n[0], self.den)

    @property
    def b(self) -> Fraction:
        return Fraction(self.n[1], self.den)

    @property
    def c(self) -> Fraction:
        return Fraction(self.n[2], self.den)

    @property
    def d(self) -> Fraction:
        return Fraction(self.n[3], self.den)

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(x, self.den) for x in self.n)

    def _addsub(self, other, sign: int) -> Quaternion:
        o = self._lift(other)
        d1, d2 = self.den, o.den
        if d1 == d2:
            return Quaternion._raw(tuple(x + sign * y for x, y in zip(self.n, o.n)), d1)
        return Quaternion._raw(tuple(x * d2 + sign * y * d1 for x, y in zip(self.n, o.n)), d1 * d2)

    def __add__(self, other):
        return self._addsub(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Quaternion._raw(tuple(-x for x in self.n), self.den)

    def __mul__(self, other):
        o = self._lift(other)
        a1, b1, c1, d1 = self.n
        a2, b2, c2, d2 = o.n
        return Quaternion._raw((
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ), self.den * o.den)

    def __rmul__(self, other):
        return self._lift(other) * self

    def conjugate(self) -> Quaternion:
        a, b, c, d = self.n
        return Quaternion._raw((a, -b, -c, -d), self.den)

    def norm(self) -> Fraction:
        return Fraction(sum(x * x for x in self.n), self.den * self.den)

    def inverse(self) -> Quaternion:
        s = sum(x * x for x in self.n)
        if s == 0:
            raise ZeroDivisionError("zero has no inverse")
        # q^-1 = conj(q) / N(q) with N(q) = s / den^2
        a, b, c, d = self.n
        return Quaternion._raw((a * self.den, -b * self.den, -c * self.den, -d * self.den), s)

    def __eq__(self, other):
        if isinstance(other, Quaternion):
            return self.n == other.n and self.den == other.den
        if isinstance(other, int) and not isinstance(other, bool):
            return self.den == 1 and self.n == (other, 0, 0, 0)
        return NotImplemented

    def __hash__(self):
        if self.n[1:] == (0, 0, 0):
            return hash(Fraction(self.n[0], self.den))
        return hash(("quaternion", self.n, self.den))

    def __repr__(self):
        return f"Quaternion({format_quaternion(self)})"

    def __str__(self):
        return format_quaternion(self)


Scalar = Union[Residue, Fraction, Quaternion]


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def format_quaternion(q: Quaternion) -> str:
    parts = [format_rational(q.a)]
    for value, unit in ((q.b, "i"), (q.c, "j"), (q.d, "k")):
        sign = "-" if value < 0 else "+"
        parts.append(f"{sign}{format_rational(abs(value))}{unit}")
    return "".join(parts)


_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
_COMPONENT = r"[+-]?\d+(?:/\d+)?"
_QUATERNION_RE = re.compile(
    rf"^({_COMPONENT})([+-]\d+(?:/\d+)?)i([+-]\d+(?:/\d+)?)j([+-]\d+(?:/\d+)?)k$"
)


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(m.group(1)), den)


class Ring:
    """Base class for the coordinate rings."""

    tag: str
    commutative: bool
    finite: bool

    zero: Scalar
    one: Scalar

    def coerce(self, x) -> Scalar:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def parse(self, text: str) -> Scalar:
        raise NotImplementedError

    def format(self, x: Scalar) -> str:
        raise NotImplementedError

    def inverse(self, x: Scalar) -> Scalar:
        if x == self.zero:
            raise ZeroDivisionError("zero has no inverse")
        return x.inverse() if not isinstance(x, Fraction) else 1 / x

    def random(self, rng: Random, height: int = 4) -> Scalar:
        raise NotImplementedError

    def small_elements(self, height: int) -> list[Scalar]:
        """Deterministically ordered elements of height at most ``height``."""
        raise NotImplementedError

    def commutativity_witness(self) -> tuple[Scalar, Scalar] | None:
        return None

    def __repr__(self):
        return f"<ring {self.tag}>"


class PrimeField(Ring):
    commutative = True
    finite = True

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.tag = f"gf:{p}"
        self.zero = Residue(p, 0)
        self.one = Residue(p, 1)

    @property
    def order(self) -> int:
        return self.p

    def coerce(self, x) -> Residue:
        if isinstance(x, Residue):
            if x.p != self.p:
                raise TypeError(f"kind mismatch: GF({x.p}) element in GF({self.p})")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, int) and not isinstance(x, bool):
            return Residue(self.p, x)
        raise TypeError(f"cannot coerce {x!r} into GF({self.p})")

    def contains(self, x) -> bool:
        return isinstance(x, Residue) and x.p == self.p

    def parse(self, text: str) -> Residue:
        text = text.strip()
        if not text.isdigit():
            raise ValueError(f"not a GF({self.p}) residue: {text!r}")
        v = int(text)
        if v >= self.p:
            raise ValueError(f"residue {v} out of range for GF({self.p})")
        return Residue(self.p, v)

    def format(self, x: Residue) -> str:
        return str(x.v)

    def elements(self) -> list[Residue]:
        return [Residue(self.p, v) for v in range(self.p)]

    def random(self, rng: Random, height: int = 4) -> Residue:
        return Residue(self.p, rng.randrange(self.p))

    def small_elements(self, height: int) -> list[Residue]:
        return self.elements()

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))


class RationalField(Ring):
    tag = "rational"
    commutative = True
    finite = False
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, str):
            return self.parse(x)
        return _fraction(x)

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def parse(self, text: str) -> Fraction:
        return parse_rational(text)

    def format(self, x: Fraction) -> str:
        return format_rational(x)

    def random(self, rng: Random, height: int = 4) -> Fraction:
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def small_elements(self, height: int) -> list[Fraction]:
        seen = {}
        for den in range(1, height + 1):
            for num in range(0, height + 1):
                for value in (Fraction(num, den), Fraction(-num, den)):
                    seen.setdefault(value, None)
        return sorted(seen, key=lambda v: (max(abs(v.numerator), v.denominator), v < 0, abs(v)))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")


class QuaternionRing(Ring):
    tag = "quaternion"
    commutative = False
    finite = False
    zero = Quaternion(0)
    one = Quaternion(1)

    def coerce(self, x) -> Quaternion:
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return Quaternion(x)
        return Quaternion._lift(x)

    def contains(self, x) -> bool:
        return isinstance(x, Quaternion)

    def parse(self, text: str) -> Quaternion:
        m = _QUATERNION_RE.match(text.strip())
        if not m:
            raise ValueError(f"not a quaternion: {text!r}")
        return Quaternion(*(parse_rational(g) for g in m.groups()))

    def format(self, x: Quaternion) -> str:
        return format_quaternion(x)

    def random(self, rng: Random, height: int = 4) -> Quaternion:
        return Quaternion(*(
            Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(4)
        ))

    def small_elements(self, height: int) -> list[Quaternion]:
        # integer components only; enough for deterministic sweeps
        values = sorted(range(-height, height + 1), key=lambda v: (abs(v), v < 0))
        out = [Quaternion(*c) for c in product(values, repeat=4)]
        out.sort(key=lambda q: (max(abs(c) for c in q.components()), sum(c != 0 for c in q.components())))
        return out

    def commutativity_witness(self) -> tuple[Quaternion, Quaternion]:
        return (Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0))

    def __eq__(self, other):
        return isinstance(other, QuaternionRing)

    def __hash__(self):
        return hash("quaternion")


RATIONAL = RationalField()
QUATERNION = QuaternionRing()


@lru_cache(maxsize=None)
def gf(p: int) -> PrimeField:
    return PrimeField(p)


def ring_from_tag(tag: str) -> Ring:
    """Parse ``gf:p``, ``rational`` or ``quaternion``."""
    if tag == "rational":
        return RATIONAL
    if tag == "quaternion":
        return QUATERNION
    if tag.startswith("gf:"):
        try:
            return gf(int(tag[3:]))
        except ValueError as exc:
            raise ValueError(f"bad ring tag {tag!r}: {exc}") from None
    raise ValueError(f"unknown ring tag {tag!r}")


def kind_of(x) -> Ring:
    if isinstance(x, Residue):
        return gf(x.p)
    if isinstance(x, Fraction):
        return RATIONAL
    if isinstance(x, Quaternion):
        return QUATERNION
    raise TypeError(f"not a scalar: {x!r}")


def arith(op: str, a: Scalar, b: Scalar) -> Scalar:
    """Apply ``add``, ``sub`` or ``mul`` to two scalars of the same kind."""
    if kind_of(a) != kind_of(b):
        raise TypeError(f"kind mismatch: {kind_of(a).tag} vs {kind_of(b).tag}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def inverse(a: Scalar) -> Scalar:
    return kind_of(a).inverse(a)


def commutativity_witness(ring: Ring) -> tuple[Scalar, Scalar] | None:
    return ring.commutativity_witness()


def sweep(ring: Ring) -> Iterator[Scalar]:
    """Every element of a finite ring, or an endless deterministic sequence."""
    if ring.finite:
        yield from ring.elements()
        return
    seen = set()
    height = 1
    while True:
        for x in ring.small_elements(height):
            if x not in seen:
                seen.add(x)
                yield x
        height += 1
