"""Interval maps on [0, 1]: Gauss, Farey, Romik, EICF and OOCF

Every map acts exactly on Fractions and QuadIrr values.  Points shared by
two OOCF branches follow the half-open partition

    B(k+1,-1) = [(k-1)/k, (2k-1)/(2k+1))    B(k,1) = [(2k-1)/(2k+1), k/(k+1))

so the digit of x is single-valued; the map value itself agrees on both
sides of every breakpoint.
"""

from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction
from math import floor, log

import numpy as np
from prefect.logging import get_logger

from utilities.util_arith import (
    Mat2,
    check_unit_interval,
    digit_matrix,
    to_exact,
)
from utilities.util_errors import InputError, IterationCapError
from utilities.util_settings import get_settings

logger = get_logger(__name__)

ONE_THIRD = Fraction(1, 3)
ONE_HALF = Fraction(1, 2)

_ROMIK = (Mat2(1, 0, -2, 1), Mat2(-2, 1, 1, 0), Mat2(2, -1, 1, 0))
_FAREY = (Mat2(1, 0, -1, 1), Mat2(-1, 1, 1, 0))


class MapKind(str, Enum):
    GAUSS = "gauss"
    FAREY = "farey"
    ROMIK = "romik"
    EICF = "eicf"
    OOCF = "oocf"


@dataclass(frozen=True)
class BranchId:
    """Which branch of which map a point falls in.

    ``index`` is the digit (a, eps) for oocf, (b, eta) for eicf, the
    partial quotient for gauss and a branch number for farey and romik.
    """

    map_kind: MapKind
    index: object


class HittingSet(str, Enum):
    """Target sets for jump transformations."""

    E1 = "E1"  # {0} u [1/3, 1], gives the EICF map from Romik
    E2 = "E2"  # [0, 1/2] u {1}, gives the OOCF map from Romik
    E_GAUSS = "E_GAUSS"  # {0} u (1/2, 1], gives the Gauss map from Farey

    def contains(self, x):
        if self is HittingSet.E1:
            return x == 0 or x >= ONE_THIRD
        if self is HittingSet.E2:
            return x <= ONE_HALF or x == 1
        return x == 0 or x > ONE_HALF


def gauss(x):
    """G(x) = frac(1/x) with G(0) = 0."""
    x = check_unit_interval(x)
    if x == 0:
        return Fraction(0)
    y = 1 / x
    return y - floor(y)


def _farey_branch(x):
    return 0 if x <= ONE_HALF else 1


def farey(x):
    """F(x) = x/(1-x) on [0, 1/2] and (1-x)/x on [1/2, 1]."""
    x = check_unit_interval(x)
    return _FAREY[_farey_branch(x)].apply(x)


def _romik_branch(x):
    if x <= ONE_THIRD:
        return 0
    if x <= ONE_HALF:
        return 1
    return 2


def romik(x):
    """R(x) = x/(1-2x), 1/x - 2 or 2 - 1/x on [0,1/3], [1/3,1/2], [1/2,1]."""
    x = check_unit_interval(x)
    return _ROMIK[_romik_branch(x)].apply(x)


def eicf_branch_of(x):
    """EICF digit (b, eta) of x in (0, 1].

    With y = 1/x and m = floor(y): m even gives (m, +1), m odd gives
    (m + 1, -1).

    Raises:
        InputError: x = 0 has no digit
    """
    x = check_unit_interval(x)
    if x == 0:
        raise InputError("0 has no EICF digit")
    m = floor(1 / x)
    return (m, 1) if m % 2 == 0 else (m + 1, -1)


def eicf_map(x):
    """T_EICF(x) = 1/x - 2k or 2k - 1/x, with T_EICF(0) = 0."""
    x = check_unit_interval(x)
    if x == 0:
        return Fraction(0)
    b, eta = eicf_branch_of(x)
    y = 1 / x
    return y - b if eta == 1 else b - y


def oocf_branch_of(x):
    """OOCF digit (a, eps) of x in [0, 1).

    k = floor(1/(1-x)) picks the pair B(k+1,-1), B(k,1); comparing x with
    (2k-1)/(2k+1) picks the member.

    Raises:
        InputError: x = 1 is a terminator and has no digit
    """
    x = check_unit_interval(x)
    if x == 1:
        raise InputError("1 has no OOCF digit")
    k = floor(1 / (1 - x))
    if x < Fraction(2 * k - 1, 2 * k + 1):
        return (k + 1, -1)
    return (k, 1)


def _digit_inverse(a, eps):
    m = digit_matrix(a, eps)
    return Mat2(m.d, -m.b, -m.c, m.a)


def oocf_map(x):
    """T_OOCF, the jump transformation of the Romik map over E2."""
    x = check_unit_interval(x)
    if x == 1:
        return Fraction(1)
    return _digit_inverse(*oocf_branch_of(x)).apply(x)


def oocf_step(x):
    """Digit of x and T_OOCF(x) in one pass, for x in [0, 1)."""
    digit = oocf_branch_of(x)
    return digit, _digit_inverse(*digit).apply(x)


def branch_id(map_kind, x):
    """Locate x in the branch alphabet of the given map.

    Args:
        map_kind (MapKind): Which map
        x (Fraction | QuadIrr): A point of [0, 1]

    Returns:
        BranchId: Map and branch label
    """
    map_kind = MapKind(map_kind)
    x = check_unit_interval(x)
    if map_kind is MapKind.OOCF:
        index = oocf_branch_of(x)
    elif map_kind is MapKind.EICF:
        index = eicf_branch_of(x)
    elif map_kind is MapKind.ROMIK:
        index = _romik_branch(x)
    elif map_kind is MapKind.FAREY:
        index = _farey_branch(x)
    else:
        if x == 0:
            raise InputError("0 has no Gauss digit")
        index = floor(1 / x)
    return BranchId(map_kind, index)


def branch_inverse(digit, t):
    """f_(a,eps)(t) = 1 - 1/(a + eps/(1+t)), the inverse branch of T_OOCF.

    Args:
        digit (tuple): (a, eps)
        t (Fraction | QuadIrr): A point of [0, 1]

    Returns:
        Fraction | QuadIrr: A_(a,eps) applied to t
    """
    a, eps = digit
    t = check_unit_interval(t)
    return digit_matrix(a, eps).apply(t)


def jump_transform(base_map, hitting_set, x, cap=None):
    """J(x) = U^(n+1)(x), n the first j >= 0 with U^j(x) in E.

    Args:
        base_map (callable): U, e.g. ``romik`` or ``farey``
        hitting_set (HittingSet): E
        x (Fraction | QuadIrr): Starting point
        cap (int, optional): Iteration guard. Defaults to OODD_JUMP_CAP.

    Raises:
        IterationCapError: the orbit did not reach E within cap steps

    Returns:
        Fraction | QuadIrr: The jump image of x
    """
    hitting_set = HittingSet(hitting_set)
    cap = cap or get_settings().jump_cap
    y = check_unit_interval(x)
    for _ in range(cap):
        if hitting_set.contains(y):
            return base_map(y)
        y = base_map(y)
    raise IterationCapError(f"jump transformation over {hitting_set.value}", cap, x)


def oocf_partition(k_max):
    """Branch intervals (digit, lo, hi) of T_OOCF for k = 1..k_max.

    Listed in ascending position; together they tile [0, k_max/(k_max+1)).
    """
    out = []
    for k in range(1, k_max + 1):
        mid = Fraction(2 * k - 1, 2 * k + 1)
        out.append(((k + 1, -1), Fraction(k - 1, k), mid))
        out.append(((k, 1), mid, Fraction(k, k + 1)))
    return out


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    closed_lo: bool = True
    closed_hi: bool = True

    def __post_init__(self):
        lo, hi = to_exact(self.lo), to_exact(self.hi)
        if not (isinstance(lo, Fraction) and isinstance(hi, Fraction)):
            raise InputError("interval endpoints must be rational")
        if lo > hi:
            raise InputError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)


@dataclass(frozen=True)
class MeasureReport:
    lo: Fraction
    hi: Fraction
    k_max: int
    lhs: float
    rhs: float
    diff: float
    tail_bound: float
    tol: float
    passed: bool

    def to_dict(self):
        out = asdict(self)
        out["lo"], out["hi"] = str(self.lo), str(self.hi)
        out["pass"] = out.pop("passed")
        return out


def measure_check(interval, k_max=None, tol=None):
    """Compare the 1/x dx mass of an interval with that of its preimages.

    Sums mu(f_(a,eps)(I)) over the branches (k+1,-1) and (k,1), k <= k_max,
    where mu([u, v]) = ln(v/u).  The branches left out carry at most
    ln((k_max+1)/k_max) of mass.

    Args:
        interval (Interval): I with 0 < lo <= hi <= 1
        k_max (int, optional): Branch cutoff K. Defaults to OODD_MEASURE_K.
        tol (float, optional): Allowed |lhs - rhs|. Defaults to OODD_MEASURE_TOL.

    Raises:
        InputError: lo = 0 or hi > 1

    Returns:
        MeasureReport: lhs, rhs and the verdict
    """
    settings = get_settings()
    k_max = k_max or settings.measure_k
    tol = settings.measure_tol if tol is None else tol
    lo, hi = interval.lo, interval.hi
    if lo <= 0:
        raise InputError("the invariant measure of an interval at 0 is infinite")
    if hi > 1:
        raise InputError(f"{hi} lies outside [0, 1]")

    excess = []
    for k in range(1, k_max + 1):
        for digit in ((k + 1, -1), (k, 1)):
            u, v = branch_inverse(digit, lo), branch_inverse(digit, hi)
            u, v = min(u, v), max(u, v)
            excess.append(float(v / u - 1))
    lhs = float(np.sum(np.log1p(np.asarray(excess, dtype=np.float64))))
    rhs = log(hi / lo)
    diff = abs(lhs - rhs)
    tail_bound = log((k_max + 1) / k_max)
    logger.info(
        "measure of [%s, %s]: %s branches, lhs=%.6f rhs=%.6f diff=%.2e",
        lo,
        hi,
        2 * k_max,
        lhs,
        rhs,
        diff,
    )
    return MeasureReport(lo, hi, k_max, lhs, rhs, diff, tail_bound, tol, diff <= tol)
