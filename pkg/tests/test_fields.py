"""Scalar arithmetic and the literal grammar for the four fields."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from translab.errors import BadPrime
from translab.fields import (
    GF,
    QI,
    QQ,
    Fp2Element,
    FpElement,
    GaussianRational,
    field_from_tag,
    is_prime,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**4)


def test_is_prime_small():
    assert [p for p in range(2, 30) if is_prime(p)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_rational_field_basics():
    assert QQ.parse("-2/5") == Fraction(-2, 5)
    assert QQ.format(Fraction(6, 4)) == "3/2"
    assert QQ.parse("7") == 7
    with pytest.raises(ValueError):
        QQ.parse("2.5")


@given(rationals, rationals)
def test_gaussian_arithmetic_matches_complex(a, b):
    z = GaussianRational(a, b)
    w = GaussianRational(b, a)
    prod = z * w
    # (a+bi)(b+ai) = (ab - ba) + (a^2 + b^2) i
    assert prod == GaussianRational(0, a * a + b * b)
    assert z + w - w == z
    if z:
        assert z / z == GaussianRational(1, 0)
    assert z.conjugate().conjugate() == z


@given(rationals, rationals)
def test_gaussian_parse_roundtrip(a, b):
    z = GaussianRational(a, b)
    assert QI.parse(QI.format(z)) == z


def test_gaussian_literals():
    assert QI.parse("1/2-3/4 i") == GaussianRational(Fraction(1, 2), Fraction(-3, 4))
    assert QI.parse("5") == GaussianRational(5, 0)
    assert QI.parse("2 i") == GaussianRational(0, 2)
    assert QI.format(GaussianRational(0, -1)) == "-1 i"


def test_prime_field_arithmetic():
    f = GF(7)
    a, b = f.from_int(3), f.from_int(5)
    assert a + b == f.from_int(1)
    assert a * b == f.from_int(1)
    assert (a / b).value == (3 * pow(5, 5, 7)) % 7
    assert -a == f.from_int(4)
    assert bool(f.zero()) is False
    # structural equality is modulus-aware
    assert FpElement(2, 5) != FpElement(2, 7)
    with pytest.raises(ZeroDivisionError):
        f.zero().inverse()


def test_prime_field_literals():
    f = GF(11)
    assert f.parse("13 mod 11") == f.from_int(2)
    assert f.format(f.from_int(-1)) == "10 mod 11"
    with pytest.raises(ValueError):
        f.parse("3 mod 7")


def test_quadratic_extension():
    f = GF(25)
    assert f.tag == "GF(5^2)"
    assert f.omega == 2  # smallest non-residue mod 5
    w = f.gen()
    assert w * w == f.from_int(2)
    x = f.from_pair(2, 3)
    assert x * x.inverse() == f.one()
    # Frobenius conjugation negates the w coordinate
    assert x.conjugate() == f.from_pair(2, -3)
    assert f.parse(f.format(x)) == x
    assert len(f.elements()) == 25


def test_sqrt_of_minus_one():
    for q in (9, 49, 121, 169):
        f = GF(q)
        i = f.sqrt_of_minus_one()
        assert i * i == f.from_int(-1)


def test_gf_constructor_validation():
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(ValueError):
        GF(8)  # p^3 unsupported
    with pytest.raises(ValueError):
        GF(4)  # quadratic extension needs an odd prime
    assert GF(2).size == 2


def test_field_tags_roundtrip():
    for f in (QQ, QI, GF(5), GF(25), GF(7), GF(49)):
        assert field_from_tag(f.tag) == f
    with pytest.raises(ValueError):
        field_from_tag("GF(10)")


@given(st.integers(0, 48), st.integers(0, 48))
def test_fp2_field_axioms(a, b):
    f = GF(49)
    x = f.from_pair(a % 7, (a * 3 + 1) % 7)
    y = f.from_pair(b % 7, (b * 2 + 5) % 7)
    assert x * y == y * x
    assert x * (y + f.one()) == x * y + x
    if y:
        assert (x / y) * y == x
