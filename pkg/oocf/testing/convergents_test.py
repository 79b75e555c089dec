import random
from fractions import Fraction

import pytest

from utilities.util_arith import Parity, QuadIrr, classify, reduced_rationals
from utilities.util_convergents import (
    SEED,
    betweenness_report,
    complete_quotient_check,
    convergence_gap,
    convergent_table,
    convergent_table_matrix,
    principal_convergents,
    principal_recursion,
    valid_prefixes,
)
from utilities.util_errors import IllegalDigitError, InputError
from utilities.util_oocf import expand

SQRT2_M1 = QuadIrr(-1, 1, 2, 1)
FIXTURES = [
    SQRT2_M1,
    QuadIrr(-1, 1, 5, 2),
    QuadIrr(-1, 1, 3, 1),
    QuadIrr(-3, 1, 13, 2),
    QuadIrr(-2, 1, 7, 1),
]


def _random_digits(rng, max_len):
    out = []
    for _ in range(rng.randint(1, max_len)):
        a = rng.randint(1, 9)
        out.append((a, 1 if a == 1 else rng.choice((1, -1))))
    return out


def test_single_digit_row():
    row = convergent_table([(1, 1)])[1]
    assert row.principal == Fraction(1, 3)
    assert row.sub == Fraction(0, 1)
    assert row.pseudo == Fraction(1, 2)


def test_silver_ratio_principals():
    table = convergent_table([(1, 1)] * 4)
    assert [t.principal for t in table[1:]] == [
        Fraction(1, 3),
        Fraction(3, 7),
        Fraction(7, 17),
        Fraction(17, 41),
    ]
    assert principal_recursion([(1, 1)] * 4) == [(1, 3), (3, 7), (7, 17), (17, 41)]


def test_seed_row():
    assert convergent_table([]) == [SEED]
    assert convergent_table_matrix([]) == [SEED]
    assert SEED.principal == 1
    assert SEED.sub is None
    assert SEED.pseudo == 0


def test_matrix_row_matches_scalar_row():
    assert convergent_table_matrix([(1, 1)])[1] == convergent_table([(1, 1)])[1]


def test_signed_determinants():
    row = convergent_table([(2, -1), (4, -1)])[1]
    assert (row.p, row.q) == (1, 3)
    assert row.sub == Fraction(1, 2)
    assert row.pseudo == 0
    assert row.sub_pseudo_det == 1
    assert row.adjacent_det == 2


def test_illegal_digit():
    with pytest.raises(IllegalDigitError):
        convergent_table([(1, 1), (1, -1)])


def test_identities_on_random_strings():
    rng = random.Random(7)
    for _ in range(500):
        digits = _random_digits(rng, 30)
        table = convergent_table(digits)
        assert table == convergent_table_matrix(digits)
        assert [(t.p, t.q) for t in table[1:]] == principal_recursion(digits)
        for prev, t in zip(table, table[1:]):
            assert classify(t.principal) is Parity.ONE_RATIONAL
            assert classify(t.pseudo) is Parity.INF_RATIONAL
            if t.q_sub:
                assert classify(t.sub) is Parity.INF_RATIONAL
            assert t.p == t.p_sub + t.p_pseudo and t.q == t.q_sub + t.q_pseudo
            assert t.sub_pseudo_det == (-1) ** t.n * t.eps_prod
            assert t.adjacent_det == 2 * (-1) ** (t.n + 1) * prev.eps_prod
            assert abs(t.sub_pseudo_det) == 1 and abs(t.adjacent_det) == 2
            assert t.q > prev.q


def test_valid_prefixes_of_a_rational():
    assert sorted(valid_prefixes(Fraction(1, 3), 1)) == [((1, 1),), ((2, -1),)]
    assert valid_prefixes(SQRT2_M1, 2) == [((1, 1), (1, 1))]


@pytest.mark.parametrize("x", FIXTURES, ids=str)
def test_betweenness_along_fixtures(x):
    table = convergent_table(expand(x, max_digits=12).unrolled(12))
    for n in range(len(table)):
        assert betweenness_report(x, table, n).passed


def test_betweenness_for_rationals():
    x = Fraction(2, 7)
    table = convergent_table(expand(x).digits)
    for n in range(len(table)):
        assert betweenness_report(x, table, n).passed


def test_betweenness_rejects_foreign_prefix():
    table = convergent_table([(1, 1)])
    with pytest.raises(InputError):
        betweenness_report(Fraction(2, 7), table, 1)


@pytest.mark.parametrize("x", FIXTURES, ids=str)
def test_convergence_gap_certified(x):
    table = convergent_table(expand(x, max_digits=30).unrolled(30))
    for n in range(1, 31):
        report = convergence_gap(x, table, n)
        assert report.certified
        assert report.bound == Fraction(2, table[n].q)


def test_convergence_gap_at_the_value():
    x = Fraction(1, 3)
    report = convergence_gap(x, convergent_table([(1, 1)]), 1)
    assert report.gap == 0 and report.certified


@pytest.mark.parametrize("x", FIXTURES + [Fraction(2, 7), Fraction(8, 11)], ids=str)
def test_complete_quotient(x):
    for n in range(1, 8):
        assert complete_quotient_check(x, n)


def test_complete_quotient_needs_digits():
    with pytest.raises(InputError):
        complete_quotient_check(Fraction(1, 3), 2)


def test_principal_convergents():
    assert principal_convergents(SQRT2_M1, qmax=100) == [
        Fraction(1, 3),
        Fraction(3, 7),
        Fraction(7, 17),
        Fraction(17, 41),
        Fraction(41, 99),
    ]
    assert principal_convergents(SQRT2_M1, n_max=2) == [Fraction(1, 3), Fraction(3, 7)]
    assert len(principal_convergents(SQRT2_M1, qmax=10**30)) > 32
    with pytest.raises(InputError):
        principal_convergents(SQRT2_M1)


def test_previous_principal_from_sub_and_pseudo():
    rng = random.Random(31)
    for _ in range(300):
        table = convergent_table(_random_digits(rng, 15))
        for prev, t in zip(table, table[1:]):
            eps = t.digit.eps
            assert prev.p == eps * (t.p_pseudo - t.p_sub)
            assert prev.q == eps * (t.q_pseudo - t.q_sub)


def test_pseudo_convergents_settle_on_inf_rationals():
    for x in reduced_rationals(40):
        if classify(x) is not Parity.INF_RATIONAL:
            continue
        e = expand(x)
        m = len(e.digits)
        table = convergent_table(e.unrolled(m + 5))
        assert [t.pseudo for t in table[m:]] == [x] * 6
