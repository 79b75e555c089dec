import random
from fractions import Fraction

import pytest

from utilities.util_arith import Parity, QuadIrr, classify, reduced_rationals
from utilities.util_errors import IllegalDigitError, InputError, NeedMoreDigitsError
from utilities.util_maps import branch_inverse
from utilities.util_oocf import OocfExpansion, Terminator, expand
from utilities.util_rcf import (
    EicfDigit,
    RcfExpansion,
    RcfTerminator,
    change_rcf,
    conjugacy,
    eicf_best_to_oocf,
    eicf_convergents,
    eicf_expand,
    intermediate_convergents,
    locate_intermediate,
    phi,
    phi_inverse,
    rcf_convergents,
    rcf_expand,
    rcf_to_oocf,
    rcf_to_oocf_stream,
    rcf_value,
    verify_conjugacy,
    verify_intermediate,
)

SQRT2_M1 = QuadIrr(-1, 1, 2, 1)
GOLDEN = QuadIrr(-1, 1, 5, 2)
FIXTURES = [
    SQRT2_M1,
    GOLDEN,
    QuadIrr(-1, 1, 3, 1),
    QuadIrr(-3, 1, 13, 2),
    QuadIrr(-2, 1, 7, 1),
]


def test_rcf_expand():
    assert rcf_expand(Fraction(2, 7)) == RcfExpansion((3, 2))
    e = rcf_expand(SQRT2_M1, max_digits=10)
    assert e.digits == (2,) * 10
    assert e.terminator is RcfTerminator.TRUNCATED
    assert rcf_expand(Fraction(0)).digits == ()


def test_rcf_expansion_is_normalized():
    assert RcfExpansion((2, 1)).digits == (3,)
    assert RcfExpansion((1,)).digits == (1,)
    with pytest.raises(InputError):
        RcfExpansion((2, 0))


def test_rcf_convergents():
    assert rcf_convergents(RcfExpansion((3, 2))) == [Fraction(1, 3), Fraction(2, 7)]
    assert intermediate_convergents(RcfExpansion((1, 2, 1, 2)), 2) == [
        Fraction(1, 2),
        Fraction(2, 3),
    ]
    assert rcf_value(RcfExpansion((1, 2, 1, 2))) == Fraction(8, 11)


def test_change_rcf_examples():
    assert change_rcf((1, 1), RcfExpansion((2,))).digits == (2, 2)
    assert change_rcf((2, -1), RcfExpansion((3,))).digits == (5,)
    assert change_rcf((3, -1), RcfExpansion((3,))).digits == (1, 1, 4)
    assert change_rcf((3, 1), RcfExpansion(())).digits == (1, 3)
    with pytest.raises(IllegalDigitError):
        change_rcf((1, -1), RcfExpansion((2,)))


def test_change_rcf_on_an_exhausted_stream():
    with pytest.raises(NeedMoreDigitsError):
        change_rcf((2, -1), RcfExpansion((), RcfTerminator.TRUNCATED))


def test_change_rcf_matches_inverse_branch():
    rng = random.Random(11)
    for _ in range(1000):
        a = rng.randint(1, 12)
        digit = (a, 1 if a == 1 else rng.choice((1, -1)))
        q = rng.randint(1, 50)
        t = Fraction(rng.randint(0, q), q)
        assert rcf_value(change_rcf(digit, rcf_expand(t))) == branch_inverse(digit, t)


@pytest.mark.parametrize(
    "digits, expected",
    [
        ((3, 2), [(2, -1), (4, -1)]),
        ((2, 1, 2), [(1, 1), (4, -1)]),
        ((1, 2, 1, 2), [(3, 1), (3, -1)]),
    ],
)
def test_converter_examples(digits, expected):
    out = rcf_to_oocf(RcfExpansion(digits))
    assert list(out.digits) == expected
    assert out.terminator is Terminator.TAIL_2M1


def test_converter_streams_lazily():
    stream = rcf_to_oocf_stream((1, 2, 1, 2))
    assert next(stream) == (3, 1)


def test_converter_matches_expand_on_rationals():
    for x in reduced_rationals(150, closed=True):
        direct = expand(x, max_digits=x.denominator + 1)
        assert rcf_to_oocf(rcf_expand(x)) == direct


@pytest.mark.parametrize("x", FIXTURES, ids=str)
def test_converter_matches_expand_on_quadratics(x):
    converted = rcf_to_oocf(rcf_expand(x, max_digits=93), max_digits=30)
    assert converted.terminator is Terminator.TRUNCATED
    assert list(converted.digits) == expand(x, max_digits=30).unrolled(30)


def test_converter_reports_truncation():
    out = rcf_to_oocf(RcfExpansion((1,), RcfTerminator.TRUNCATED))
    assert out == OocfExpansion((), Terminator.TRUNCATED)
    assert out.need_more_digits
    assert out.to_dict()["need_more_digits"] is True


def test_digit_cap_is_not_a_starved_stream():
    out = rcf_to_oocf(rcf_expand(SQRT2_M1, max_digits=40), max_digits=5)
    assert out.terminator is Terminator.TRUNCATED
    assert not out.need_more_digits
    assert "need_more_digits" not in out.to_dict()


def test_eicf_expand_and_convergents():
    e = eicf_expand(SQRT2_M1, max_digits=5)
    assert e.digits == ((2, 1),) * 5
    assert e.terminator is Terminator.TRUNCATED
    assert eicf_convergents([(2, 1)] * 3) == [Fraction(1, 2), Fraction(2, 5), Fraction(5, 12)]
    assert eicf_expand(Fraction(0)).terminator is Terminator.FINITE
    assert eicf_expand(Fraction(1)).terminator is Terminator.TAIL_2M1


@pytest.mark.parametrize("x", FIXTURES + [Fraction(2, 7), Fraction(5, 13)], ids=str)
def test_eicf_convergents_are_inf_rationals(x):
    digits = eicf_expand(x, max_digits=20).digits
    for r in eicf_convergents(digits):
        assert classify(r) is Parity.INF_RATIONAL


def test_eicf_digit_alphabet():
    with pytest.raises(IllegalDigitError):
        EicfDigit.make(3, 1)


def test_phi_correspondence():
    assert phi((3, -1)) == (4, -1)
    assert phi((2, 1)) == (4, 1)
    assert phi((1, 1)) == (2, 1)
    for a in range(1, 10):
        for eps in (1, -1):
            if (a, eps) != (1, -1):
                assert phi_inverse(phi((a, eps))) == (a, eps)


def test_conjugacy_involution():
    assert conjugacy(Fraction(0)) == 1
    assert conjugacy(Fraction(1)) == 0
    assert conjugacy(SQRT2_M1) == SQRT2_M1
    assert conjugacy(conjugacy(Fraction(2, 7))) == Fraction(2, 7)


def test_verify_conjugacy():
    for x in FIXTURES:
        assert verify_conjugacy(x, steps=30).passed
    for x in reduced_rationals(40, closed=True):
        assert verify_conjugacy(x, steps=30).passed


def test_eicf_best_to_oocf():
    assert eicf_best_to_oocf(SQRT2_M1, n_max=8).passed
    assert eicf_best_to_oocf(GOLDEN, n_max=8).passed
    for x in FIXTURES:
        assert eicf_best_to_oocf(x, n_max=10).passed
    with pytest.raises(InputError):
        eicf_best_to_oocf(Fraction(1, 3))


def test_locate_intermediate():
    e = RcfExpansion((1, 2, 1, 2))
    assert locate_intermediate(Fraction(5, 7), e) == (4, 1)
    assert locate_intermediate(Fraction(21, 29), e) == (6, 2)
    assert locate_intermediate(Fraction(4, 7), e) is None


@pytest.mark.parametrize(
    "x, n_max",
    [(SQRT2_M1, 6), (Fraction(8, 11), 10), (Fraction(1, 3), 10)] + [(x, 10) for x in FIXTURES],
    ids=str,
)
def test_verify_intermediate(x, n_max):
    report = verify_intermediate(x, n_max)
    assert report.passed, report.to_dict()
