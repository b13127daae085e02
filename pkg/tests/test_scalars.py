from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.algebras.quaternion import Quaternion as SymQuaternion

from projgeom.scalars import (QUATERNION, RATIONAL, Quaternion, Residue, arith, commutativity_witness,
                              gf, inverse, kind_of, ring_from_tag)

I, J, K = Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)


def test_gf5_product():
    F = gf(5)
    assert arith("mul", F.coerce(3), F.coerce(4)) == F.coerce(2)


def test_quaternion_units_anticommute():
    assert arith("mul", I, J) == K
    assert arith("mul", J, I) == -K
    assert I * J * K == Quaternion(-1)


def test_rational_sum():
    assert arith("add", Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)


def test_inverses_from_examples():
    assert inverse(gf(7).coerce(3)) == gf(7).coerce(5)
    assert inverse(I) == -I
    assert inverse(Fraction(-2, 3)) == Fraction(-3, 2)


def test_zero_has_no_inverse():
    for ring in (gf(5), RATIONAL, QUATERNION):
        with pytest.raises(ZeroDivisionError):
            ring.inverse(ring.zero)


def test_kind_mismatch_rejected():
    with pytest.raises(TypeError):
        arith("add", gf(5).coerce(1), gf(7).coerce(1))
    with pytest.raises(TypeError):
        arith("mul", Fraction(1), I)


def test_commutativity_witness():
    assert commutativity_witness(gf(5)) is None
    assert commutativity_witness(RATIONAL) is None
    a, b = commutativity_witness(QUATERNION)
    assert (a, b) == (I, J)
    assert a * b != b * a


def test_modulus_must_be_prime():
    with pytest.raises(ValueError):
        gf(6)
    with pytest.raises(ValueError):
        gf(1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_field_tables_exhaustive(p):
    F = gf(p)
    els = F.elements()
    assert [x.v for x in els] == list(range(p))
    for a, b, c in product(els, repeat=3):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
    for a in els[1:]:
        # sympy's modular inverse as an independent oracle
        assert F.inverse(a).v == sympy.mod_inverse(a.v, p)
        assert a * F.inverse(a) == F.one == F.inverse(a) * a


def test_canonical_strings():
    assert gf(7).format(gf(7).coerce(10)) == "3"
    assert RATIONAL.format(Fraction(2, 4)) == "1/2"
    assert RATIONAL.format(Fraction(3)) == "3/1"
    assert RATIONAL.format(Fraction(-6, 4)) == "-3/2"
    assert QUATERNION.format(Quaternion(Fraction(1, 2), -1, 0, 3)) == "1/2-1/1i+0/1j+3/1k"


def test_parse_accepts_only_canonical_shapes():
    assert QUATERNION.parse("1/2-1/1i+0/1j+3/1k") == Quaternion(Fraction(1, 2), -1, 0, 3)
    assert RATIONAL.parse("-3/2") == Fraction(-3, 2)
    with pytest.raises(ValueError):
        QUATERNION.parse("i+j")
    with pytest.raises(ValueError):
        RATIONAL.parse("0.5")
    with pytest.raises(ValueError):
        gf(5).parse("7")


def test_ring_tags():
    assert ring_from_tag("gf:5") is gf(5)
    assert ring_from_tag("rational") is RATIONAL
    assert ring_from_tag("quaternion") is QUATERNION
    for bad in ("gf:4", "gf:x", "complex"):
        with pytest.raises(ValueError):
            ring_from_tag(bad)
    assert kind_of(I) is QUATERNION


def test_residue_reduced():
    assert Residue(5, -1).v == 4
    assert Residue(5, 12) == Residue(5, 2)


def test_quaternion_matches_sympy():
    a = Quaternion(1, Fraction(1, 2), -3, 2)
    b = Quaternion(Fraction(-2, 3), 0, 5, 1)
    sa, sb = SymQuaternion(*map(sympy.Rational, (1, "1/2", -3, 2))), SymQuaternion(
        *map(sympy.Rational, ("-2/3", 0, 5, 1)))
    prod = sa * sb
    assert (a * b).components() == tuple(Fraction(str(x)) for x in (prod.a, prod.b, prod.c, prod.d))


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
quaternions = st.builds(Quaternion, fractions, fractions, fractions, fractions)
nonzero_quaternions = quaternions.filter(lambda q: q != QUATERNION.zero)


@given(quaternions, quaternions, quaternions)
def test_quaternion_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a - a == QUATERNION.zero


@given(quaternions, quaternions)
def test_quaternion_norm_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()


@given(nonzero_quaternions)
def test_quaternion_two_sided_inverse(a):
    assert a.norm() != 0
    assert a * a.inverse() == QUATERNION.one == a.inverse() * a


@given(fractions.filter(bool))
def test_rational_inverse(x):
    assert x * RATIONAL.inverse(x) == 1


@given(quaternions)
def test_quaternion_string_round_trip(q):
    assert QUATERNION.parse(QUATERNION.format(q)) == q


@given(fractions)
def test_rational_string_round_trip(x):
    assert RATIONAL.parse(RATIONAL.format(x)) == x


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers())
def test_residue_string_round_trip(p, n):
    F = gf(p)
    assert F.parse(F.format(F.coerce(n))) == F.coerce(n)


def test_real_quaternions_hash_like_fractions():
    assert hash(Quaternion(Fraction(3, 2))) == hash(Fraction(3, 2))
    assert Quaternion(2) == Quaternion(Fraction(4, 2))
