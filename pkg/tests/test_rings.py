from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringcert import QQ, ZZ, Ring, RingMismatchError, extended_gcd
from ringcert.rings import add, is_unit, mul, neg, try_inverse

Z6 = Ring.mod(6)


def test_add_mul_examples():
    assert add(ZZ(2), ZZ(3)) == ZZ(5)
    assert mul(Z6(2), Z6(3)) == Z6(0)
    assert add(QQ(Fraction(1, 2)), QQ(Fraction(1, 3))) == QQ(Fraction(5, 6))
    assert neg(Z6(1)) == Z6(5)


def test_is_unit_examples():
    assert is_unit(ZZ(-1))
    assert is_unit(Z6(5))
    assert not is_unit(Z6(2))
    assert Z6.is_nonzero_nonunit(2)


def test_try_inverse_examples():
    assert try_inverse(Z6(5)) == Z6(5)
    assert try_inverse(QQ(Fraction(2, 3))) == QQ(Fraction(3, 2))
    assert try_inverse(ZZ(2)) is None


@pytest.mark.parametrize("a,b,expected", [((2, 3), None, (1, -1, 1)), ((0, 0), None, (0, 0, 0)), ((6, 4), None, (2, 1, -1))])
def test_extended_gcd_examples(a, b, expected):
    assert extended_gcd(*a) == expected


def test_extended_gcd_bezout_exhaustive():
    for a in range(-50, 51):
        for b in range(-50, 51):
            g, s, t = extended_gcd(a, b)
            assert g == gcd(a, b) and g >= 0
            assert s * a + t * b == g


def test_descriptor_mismatch():
    with pytest.raises(RingMismatchError):
        add(Z6(1), Ring.mod(5)(1))
    with pytest.raises(RingMismatchError):
        Z6(1) * Ring.gf(3)(1)


@pytest.mark.parametrize("bad", [lambda: Ring.mod(1), lambda: Ring.gf(4), lambda: Ring.gf(1), lambda: Ring("R")])
def test_invalid_descriptors(bad):
    with pytest.raises(ValueError):
        bad()


def test_canonical_forms():
    assert Z6(-1).value == 5
    assert QQ("6/4").value == Fraction(3, 2)
    assert QQ(Fraction(3, -6)).value.denominator > 0
    for ring in (ZZ, Z6, Ring.gf(2), QQ):
        assert ring.zero != ring.one


def test_prime_field_is_flagged_residue_ring():
    assert Ring.gf(5).is_field and not Ring.mod(5).is_field
    assert Ring.gf(5) != Ring.mod(5)


@pytest.mark.parametrize("n", range(2, 31))
def test_unit_iff_inverse_exhaustive(n):
    ring = Ring.mod(n)
    for x in ring.elements():
        inv = ring.inverse(x)
        assert ring.is_unit(x) == (inv is not None)
        assert ring.is_unit(x) == (gcd(x, n) == 1)
        if inv is not None:
            assert ring.mul(x, inv) == 1


@settings(max_examples=300)
@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_unit_iff_inverse_random(a, b):
    assert ZZ.is_unit(a) == (ZZ.inverse(a) is not None)
    x = Fraction(a, b)
    assert QQ.is_unit(x) == (QQ.inverse(x) is not None)


RINGS = {
    "Z": (ZZ, st.integers(-10**9, 10**9)),
    "Z/6": (Ring.mod(6), st.integers(0, 5)),
    "Z/12": (Ring.mod(12), st.integers(0, 11)),
    "GF(7)": (Ring.gf(7), st.integers(0, 6)),
    "Q": (QQ, st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)),
}


@pytest.mark.parametrize("name", RINGS)
def test_ring_axioms(name):
    ring, values = RINGS[name]

    @settings(max_examples=1000, deadline=None)
    @given(values, values, values)
    def check(a, b, c):
        a, b, c = ring.canon(a), ring.canon(b), ring.canon(c)
        assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
        assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
        assert ring.add(a, b) == ring.add(b, a)
        assert ring.mul(a, b) == ring.mul(b, a)
        assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        assert ring.add(a, ring.neg(a)) == ring.zero
        assert ring.add(a, ring.zero) == a and ring.mul(a, ring.one) == a

    check()


@pytest.mark.parametrize("ring", [ZZ, QQ, Ring.mod(6), Ring.gf(3)])
def test_descriptor_json_roundtrip(ring):
    assert Ring.from_json(ring.to_json()) == ring


def test_element_literals():
    assert QQ.encode(Fraction(5, 6)) == "5/6"
    assert QQ.encode(Fraction(4)) == 4
    assert QQ.decode("5/6") == Fraction(5, 6)
    assert Z6.decode(-1) == 5
    with pytest.raises(ValueError):
        ZZ.decode("1/2")
    with pytest.raises(ValueError):
        QQ.decode("1/0")
