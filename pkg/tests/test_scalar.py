from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from octoder.scalar import QQ, Field, FieldError, Scalar, field_make, parse_field

F101 = Field(101)
ints = st.integers(min_value=-10**6, max_value=10**6)
fracs = st.fractions(max_denominator=1000).filter(lambda x: abs(x) < 10**6)


def test_field_make():
    assert field_make("Rationals") == QQ
    F = field_make("PrimeField", 101)
    assert F.modulus == 101 and F.characteristic == 101
    assert QQ.characteristic == 0


@pytest.mark.parametrize("bad", [2, 1, 0, 9, 100, -7])
def test_bad_moduli(bad):
    with pytest.raises(FieldError):
        Field(bad)


def test_char_two_message():
    with pytest.raises(FieldError, match="characteristic two excluded"):
        field_make("PrimeField", 2)


def test_parse_field():
    assert parse_field("q") == QQ
    assert parse_field("mod:101") == F101
    assert parse_field("Fp:7") == Field(7)
    with pytest.raises(FieldError):
        parse_field("mod:x")
    with pytest.raises(FieldError):
        parse_field("reals")


def test_examples():
    assert QQ.scalar(Fraction(1, 2)) + QQ.scalar(Fraction(1, 3)) == Fraction(5, 6)
    # 2500 = 24 * 101 + 76
    assert F101.scalar(50) * 50 == 76
    assert F101.scalar(1) / 2 == 51


def test_format_parse_roundtrip(field):
    for x in (0, 1, -3, Fraction(7, 5), Fraction(-22, 9)):
        v = field(x)
        assert field.parse(field.format(v)) == v
    assert QQ.format(Fraction(-3, 6)) == "-1/2"
    assert F101.format(-1) == "100"


def test_fraction_into_fp():
    assert F101(Fraction(1, 2)) == 51
    with pytest.raises(ZeroDivisionError):
        F101(Fraction(1, 101))


def test_scalar_immutable_and_mixing():
    s = F101.scalar(3)
    with pytest.raises(AttributeError):
        s.value = 4
    with pytest.raises(FieldError):
        s + QQ.scalar(1)
    with pytest.raises(ZeroDivisionError):
        F101.scalar(0).inverse()


@given(fracs, fracs, fracs)
def test_q_field_axioms(a, b, c):
    x, y, z = (QQ.scalar(v) for v in (a, b, c))
    assert x + y == y + x and x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1


@given(st.sampled_from([3, 5, 101, 65537, 2**31 - 1]), ints, ints, ints)
def test_fp_field_axioms(p, a, b, c):
    F = Field(p)
    x, y, z = F.scalar(a), F.scalar(b), F.scalar(c)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert -x + x == 0
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(fracs, fracs)
def test_reduction_is_homomorphism(a, b):
    # Q -> F_101 wherever denominators are invertible
    if a.denominator % 101 == 0 or b.denominator % 101 == 0:
        return
    assert F101(a * b) == F101.mul(F101(a), F101(b))
    assert F101(a + b) == F101.add(F101(a), F101(b))


def test_canonical_form_unique():
    assert QQ(Fraction(2, 4)) == QQ(Fraction(1, 2))
    assert F101(-1) == F101(100) == 100
    assert hash(F101.scalar(-1)) == hash(F101.scalar(100))
    assert isinstance(F101.scalar(5), Scalar)
