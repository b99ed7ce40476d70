from fractions import Fraction

import pytest

from vmrange.rational import (
    RatVector,
    as_scaled_ints,
    common_denominator,
    format_rational,
    from_scaled_ints,
    parse_rational,
    vec,
)


def test_parse_forms():
    assert parse_rational("3/10") == Fraction(3, 10)
    assert parse_rational("0.55") == Fraction(11, 20)
    assert parse_rational("-8/5") == Fraction(-8, 5)
    assert parse_rational("42") == Fraction(42)
    assert parse_rational(7) == Fraction(7)
    assert parse_rational(Fraction(1, 3)) == Fraction(1, 3)


def test_decimal_strings_are_exact():
    # float(0.55) is not 11/20; the string form must be
    assert parse_rational("0.55") == Fraction(11, 20)
    assert parse_rational("0.55") != Fraction(0.55)


def test_floats_rejected():
    with pytest.raises(TypeError):
        parse_rational(0.55)
    with pytest.raises(TypeError):
        parse_rational(True)


def test_bad_strings_rejected():
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("abc")


def test_format_roundtrip():
    for text in ("3/10", "-8/5", "42", "11/20"):
        assert parse_rational(format_rational(parse_rational(text))) == parse_rational(text)
    assert format_rational(Fraction(5)) == "5"
    assert format_rational(Fraction(-8, 5)) == "-8/5"


def test_vector_arithmetic():
    a = vec(1, 2)
    b = vec("1/2", "1/3")
    assert a + b == vec("3/2", "7/3")
    assert a - b == vec("1/2", "5/3")
    assert -b == vec("-1/2", "-1/3")
    assert b.scale(6) == vec(3, 2)
    assert a.dot(b) == Fraction(7, 6)
    assert RatVector.zero(2).is_zero() and not a.is_zero()


def test_vector_dimension_checks():
    with pytest.raises(ValueError):
        vec(1, 2) + vec(1, 2, 3)
    with pytest.raises(ValueError):
        vec(1).dot(vec(1, 2))
    with pytest.raises(ValueError):
        RatVector.parse("1,2,3", dim=2)


def test_vector_parse_csv():
    assert RatVector.parse("80,70,50") == vec(80, 70, 50)
    assert RatVector.parse("7/5, 1, -8/5") == vec("7/5", 1, "-8/5")
    assert RatVector.parse(["0.25", 3]) == vec("1/4", 3)


def test_vector_hash_consistent_with_eq():
    a, b = vec("1/3", "2/5"), vec("1/3", "2/5")
    assert a == b and hash(a) == hash(b)
    assert {a: 1}[b] == 1


def test_scaled_int_lattice():
    a = vec("1/3", "2/5")
    den = common_denominator([a])
    assert den == 15
    assert as_scaled_ints(a, 15) == (5, 6)
    assert as_scaled_ints(a, 10) is None
    assert from_scaled_ints((5, 6), 15) == a


def test_json_serialization():
    assert vec("1/2", 3).to_json() == ["1/2", "3"]
