from fractions import Fraction
from math import log

import pytest

from utilities.util_arith import QuadIrr, classify, reduced_rationals
from utilities.util_errors import InputError, IterationCapError
from utilities.util_maps import (
    HittingSet,
    Interval,
    MapKind,
    branch_id,
    branch_inverse,
    eicf_branch_of,
    eicf_map,
    farey,
    gauss,
    jump_transform,
    measure_check,
    oocf_branch_of,
    oocf_map,
    oocf_partition,
    romik,
)
from utilities.util_settings import get_settings

SQRT2_M1 = QuadIrr(-1, 1, 2, 1)
FIXTURES = [
    SQRT2_M1,
    QuadIrr(-1, 1, 5, 2),
    QuadIrr(-1, 1, 3, 1),
    QuadIrr(-3, 1, 13, 2),
    QuadIrr(-2, 1, 7, 1),
]


@pytest.fixture
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def test_base_maps():
    assert gauss(Fraction(3, 8)) == Fraction(2, 3)
    assert gauss(Fraction(0)) == 0
    assert gauss(Fraction(1)) == 0
    assert farey(Fraction(1, 3)) == Fraction(1, 2)
    assert farey(Fraction(3, 4)) == Fraction(1, 3)
    assert romik(Fraction(1, 3)) == 1
    assert romik(Fraction(1, 4)) == Fraction(1, 2)
    assert romik(Fraction(3, 4)) == Fraction(2, 3)


def test_maps_reject_points_outside_unit_interval():
    with pytest.raises(InputError):
        oocf_map(Fraction(5, 4))
    with pytest.raises(InputError):
        romik(Fraction(-1, 2))


@pytest.mark.parametrize(
    "x, digit",
    [
        (Fraction(7, 10), (4, -1)),
        (Fraction(3, 8), (1, 1)),
        (Fraction(1, 3), (1, 1)),
        (Fraction(1, 4), (2, -1)),
        (Fraction(3, 5), (2, 1)),
        (Fraction(1, 2), (3, -1)),
        (Fraction(0), (2, -1)),
    ],
)
def test_oocf_branch_of(x, digit):
    assert oocf_branch_of(x) == digit


def test_oocf_branch_of_one_is_a_terminator():
    with pytest.raises(InputError):
        oocf_branch_of(Fraction(1))


def test_oocf_map_values():
    assert oocf_map(Fraction(7, 10)) == Fraction(1, 2)
    assert oocf_map(Fraction(0)) == 0
    assert oocf_map(Fraction(1)) == 1
    assert oocf_map(SQRT2_M1) == SQRT2_M1


def test_eicf_map_values():
    assert eicf_branch_of(Fraction(1, 3)) == (4, -1)
    assert eicf_branch_of(Fraction(2, 5)) == (2, 1)
    assert eicf_map(Fraction(1, 3)) == 1
    assert eicf_map(SQRT2_M1) == SQRT2_M1
    assert eicf_map(Fraction(0)) == 0


def test_branch_inverse_examples():
    assert branch_inverse((1, 1), Fraction(1)) == Fraction(1, 3)
    assert branch_inverse((2, -1), Fraction(0)) == 0


def test_map_undoes_every_inverse_branch():
    digits = [(a, eps) for a in range(1, 7) for eps in (1, -1) if (a, eps) != (1, -1)]
    for digit in digits:
        for t in reduced_rationals(12, closed=True):
            assert oocf_map(branch_inverse(digit, t)) == t


def test_partition_tiles_the_interval():
    parts = oocf_partition(2)
    assert parts == [
        ((2, -1), Fraction(0), Fraction(1, 3)),
        ((1, 1), Fraction(1, 3), Fraction(1, 2)),
        ((3, -1), Fraction(1, 2), Fraction(3, 5)),
        ((2, 1), Fraction(3, 5), Fraction(2, 3)),
    ]
    for (_, _, hi), (_, lo, _) in zip(parts, parts[1:]):
        assert hi == lo


def test_partition_tiles_up_to_k_over_k_plus_one():
    parts = oocf_partition(100)
    assert len(parts) == 200
    assert parts[0][1] == 0 and parts[-1][2] == Fraction(100, 101)
    for (_, _, hi), (_, lo, _) in zip(parts, parts[1:]):
        assert hi == lo
    for digit, lo, hi in parts:
        assert lo < hi
        mid = (lo + hi) / 2
        assert oocf_branch_of(mid) == digit
        assert branch_inverse(digit, oocf_map(mid)) == mid


def test_maps_never_raise_denominators():
    for x in reduced_rationals(200):
        assert romik(x).denominator <= x.denominator
        assert oocf_map(x).denominator < x.denominator


def test_oocf_map_preserves_parity():
    for x in reduced_rationals(200, closed=True):
        assert classify(oocf_map(x)) is classify(x)


def test_branch_id():
    assert branch_id(MapKind.OOCF, Fraction(7, 10)).index == (4, -1)
    assert branch_id(MapKind.GAUSS, Fraction(3, 8)).index == 2
    assert branch_id(MapKind.ROMIK, Fraction(1, 4)).index == 0
    assert branch_id("eicf", Fraction(1, 3)).index == (4, -1)


def test_hitting_sets():
    assert HittingSet.E2.contains(Fraction(1))
    assert not HittingSet.E2.contains(Fraction(3, 4))
    assert HittingSet.E1.contains(Fraction(0))
    assert not HittingSet.E1.contains(Fraction(1, 4))
    assert not HittingSet.E_GAUSS.contains(Fraction(1, 2))


def test_jump_examples():
    assert jump_transform(romik, HittingSet.E2, Fraction(7, 10)) == Fraction(1, 2)
    assert jump_transform(romik, HittingSet.E2, Fraction(0)) == 0


def test_jump_equivalence_on_rationals():
    for x in reduced_rationals(200, closed=True):
        assert oocf_map(x) == jump_transform(romik, HittingSet.E2, x)
        assert eicf_map(x) == jump_transform(romik, HittingSet.E1, x)
        assert gauss(x) == jump_transform(farey, HittingSet.E_GAUSS, x)


@pytest.mark.parametrize("x", FIXTURES, ids=str)
def test_jump_equivalence_on_quadratics(x):
    z = x
    for _ in range(10):
        assert oocf_map(z) == jump_transform(romik, HittingSet.E2, z)
        assert eicf_map(z) == jump_transform(romik, HittingSet.E1, z)
        assert gauss(z) == jump_transform(farey, HittingSet.E_GAUSS, z)
        z = oocf_map(z)


def test_jump_cap():
    with pytest.raises(IterationCapError):
        jump_transform(romik, HittingSet.E1, Fraction(1, 100), cap=5)


def test_jump_cap_from_environment(monkeypatch, fresh_settings):
    monkeypatch.setenv("OODD_JUMP_CAP", "5")
    assert get_settings().jump_cap == 5
    with pytest.raises(IterationCapError):
        jump_transform(romik, HittingSet.E1, Fraction(1, 100))


@pytest.mark.parametrize(
    "lo, hi",
    [(Fraction(1, 2), Fraction(1)), (Fraction(1, 3), Fraction(2, 3)), (Fraction(1, 10), Fraction(1, 5))],
)
def test_measure_preserved(lo, hi):
    report = measure_check(Interval(lo, hi), k_max=2000, tol=5e-3)
    assert report.passed
    assert report.rhs == pytest.approx(log(hi / lo))
    assert report.tail_bound < 5e-3


def test_measure_of_degenerate_interval():
    report = measure_check(Interval(Fraction(1, 2), Fraction(1, 2)), k_max=10, tol=1e-9)
    assert report.lhs == 0
    assert report.rhs == 0
    assert report.to_dict()["pass"]


def test_measure_at_zero_is_rejected():
    with pytest.raises(InputError):
        measure_check(Interval(Fraction(0), Fraction(1, 2)))
    with pytest.raises(InputError):
        Interval(Fraction(2, 3), Fraction(1, 3))
