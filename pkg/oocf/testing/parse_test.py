from fractions import Fraction

import pytest

from utilities.util_arith import QuadIrr
from utilities.util_errors import InputError, ParseError
from utilities.util_parse import parse_digits, parse_number


@pytest.mark.parametrize(
    "text, expected",
    [
        ("2/7", Fraction(2, 7)),
        ("4/14", Fraction(2, 7)),
        (" 3 / 8 ", Fraction(3, 8)),
        ("0/1", Fraction(0)),
        ("1", Fraction(1)),
        ("-3/-9", Fraction(1, 3)),
        ("(-1+1*sqrt(2))/1", QuadIrr(-1, 1, 2, 1)),
        ("(-1+1*sqrt(5))/2", QuadIrr(-1, 1, 5, 2)),
        ("(0+1*sqrt(2))/2", QuadIrr(0, 1, 2, 2)),
        ("(-2+sqrt(7))", QuadIrr(-2, 1, 7, 1)),
        ("sqrt(3)", QuadIrr(0, 1, 3, 1)),
        ("(1+sqrt(4))/3", Fraction(1)),
    ],
)
def test_parse_number(text, expected):
    assert parse_number(text) == expected


@pytest.mark.parametrize(
    "text, position",
    [("2/x", 2), ("2/7abc", 3), ("(1+1*sqrt(2)", 12), ("", 0), ("(-1+1*sqr(2))/1", 9)],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_number(text)
    assert info.value.position == position


def test_zero_denominator_is_input_error():
    with pytest.raises(InputError):
        parse_number("1/0")
    with pytest.raises(InputError):
        parse_number("(1+sqrt(2))/0")


def test_parse_digits():
    assert parse_digits("3, 2,1") == [3, 2, 1]
    assert parse_digits("") == []
    with pytest.raises(ParseError) as info:
        parse_digits("3,x,2")
    assert info.value.position == 2
    with pytest.raises(ParseError) as info:
        parse_digits("3, 0")
    assert info.value.position == 3
